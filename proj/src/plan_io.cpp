#include "dqc/plan_io.hpp"

#include "json.hpp"

namespace dqc {

using nlohmann::json;

namespace {

json kernel_json(const KernelRef &k, const Circuit &c) {
  json j = {{"kind", kernel_kind_name(k.kind)}, {"q", c.name(k.q)},
            {"t1", k.t1},                       {"t2", k.t2}};
  if (k.kind == KernelKind::Hop) j["units"] = k.units;
  if (k.is_embedding()) j["parity"] = k.parity;
  if (k.kind == KernelKind::Extended) j["gap"] = k.gap;
  return j;
}

json packet_json(const Packet &p, const Circuit &c) {
  json ks = json::array();
  for (const auto &k : p.kernels) ks.push_back(kernel_json(k, c));
  json j = {{"q", c.name(p.q)}, {"T", p.T}, {"kernels", ks}};
  if (p.extended_host) j["extended_host"] = true;
  return j;
}

json report_json(const VerificationReport &r) {
  return {{"status", verify_status_name(r.status)},
          {"branches", r.branches},
          {"max_deviation", r.max_deviation},
          {"phase", r.phase}};
}

int qubit(const json &j, const Circuit &c) {
  int q = c.index_of(j.get<std::string>());
  if (q < 0) throw DqcError(ErrorKind::UnknownQubit, j.get<std::string>());
  return q;
}

KernelRef kernel_from(const json &j, const Circuit &c) {
  KernelRef k;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "distribute") k.kind = KernelKind::Distribute;
  else if (kind == "neighbour") k.kind = KernelKind::Neighbour;
  else if (kind == "hop") k.kind = KernelKind::Hop;
  else if (kind == "extended") k.kind = KernelKind::Extended;
  else throw DqcError(ErrorKind::InvalidPlan, "unknown kernel kind " + kind);
  k.q = qubit(j.at("q"), c);
  k.t1 = j.at("t1").get<int>();
  k.t2 = j.at("t2").get<int>();
  if (j.contains("units")) k.units = j["units"].get<std::vector<int>>();
  k.parity = j.value("parity", 0);
  k.gap = j.value("gap", -1);
  return k;
}

}  // namespace

std::string kernel_to_json(const KernelRef &k, const Circuit &c) {
  return kernel_json(k, c).dump();
}

std::string packets_to_json(const PacketSet &set, const Circuit &c) {
  json arr = json::array();
  for (const auto &p : set.packets) arr.push_back(packet_json(p, c));
  return arr.dump(1) + "\n";
}

std::string report_to_json(const VerificationReport &r) { return report_json(r).dump(); }

std::string plan_to_json(const PackingPlan &plan, const Circuit &c,
                         const VerificationReport *report) {
  json roots = json::array(), removed = json::array(), ext = json::array();
  for (const auto &r : plan.roots) {
    json j = packet_json(r, c);
    j["aux_side"] = side_name(opposite(c.side(r.q)));
    roots.push_back(j);
  }
  for (const auto &k : plan.removed_embeddings) removed.push_back(kernel_json(k, c));
  for (const auto &k : plan.extended) ext.push_back(kernel_json(k, c));
  json doc = {{"roots", roots},
              {"removed_embeddings", removed},
              {"extended", ext},
              {"ebits", plan.ebits},
              {"aux", {{"A", plan.aux.a}, {"B", plan.aux.b}}},
              {"baseline", plan.baseline},
              {"cover_size", plan.cover_size}};
  if (report) doc["verification"] = report_json(*report);
  return doc.dump(1) + "\n";
}

PackingPlan plan_from_json(const std::string &text, const Circuit &c) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw DqcError(ErrorKind::ParseError, e.what());
  }
  PackingPlan plan;
  try {
    for (const auto &r : doc.at("roots")) {
      Packet p;
      p.q = qubit(r.at("q"), c);
      p.T = r.at("T").get<std::vector<int>>();
      for (const auto &k : r.at("kernels")) p.kernels.push_back(kernel_from(k, c));
      p.extended_host = r.value("extended_host", false);
      plan.roots.push_back(p);
    }
    if (doc.contains("removed_embeddings"))
      for (const auto &k : doc["removed_embeddings"])
        plan.removed_embeddings.push_back(kernel_from(k, c));
    if (doc.contains("extended"))
      for (const auto &k : doc["extended"]) plan.extended.push_back(kernel_from(k, c));
    plan.ebits = doc.value("ebits", static_cast<int>(plan.roots.size()));
    if (doc.contains("aux")) {
      plan.aux.a = doc["aux"].value("A", 0);
      plan.aux.b = doc["aux"].value("B", 0);
    }
    plan.baseline = doc.value("baseline", 0);
    plan.cover_size = doc.value("cover_size", 0);
  } catch (const json::exception &e) {
    throw DqcError(ErrorKind::InvalidPlan, e.what());
  }
  return plan;
}

}  // namespace dqc
