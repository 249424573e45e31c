#pragma once

#include <string>

#include "dqc/verifier.hpp"

namespace dqc {

std::string kernel_to_json(const KernelRef &k, const Circuit &c);
std::string packets_to_json(const PacketSet &set, const Circuit &c);
std::string plan_to_json(const PackingPlan &plan, const Circuit &c,
                         const VerificationReport *report = nullptr);
PackingPlan plan_from_json(const std::string &text, const Circuit &c);
std::string report_to_json(const VerificationReport &r);

}  // namespace dqc
