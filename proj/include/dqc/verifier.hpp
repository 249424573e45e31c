#pragma once

#include <string>
#include <vector>

#include "dqc/solver.hpp"

namespace dqc {

// Kraus-level view of one packing process: kernel over n circuit wires plus
// the aux wire e, which is always the last (least significant) wire.
struct PackingProcess {
  int q = 0;
  int n = 1;
  CMat kernel;
};

CMat cx_gate_on(int control, int target, int wires);
CMat starting_isometry(int q, int n);
CMat primitive_kernel(const CMat &u, int q);  // C_{q,X_e} U C_{q,X_e}

struct KrausPair {
  CMat plus, minus;
};
KrausPair kraus_of_process(const PackingProcess &proc);

enum class Equivalence { Canonical, UpToPhase, NotUnitary };
const char *equivalence_name(Equivalence e);

struct EquivalenceResult {
  Equivalence kind = Equivalence::NotUnitary;
  double phase = 0.0;  // K+ = e^{i phase} K-
  CMat unitary;        // K+ when unitary-equivalent
};
EquivalenceResult is_unitary_equivalent(const PackingProcess &proc);

// Operator Schmidt factorisation of m (on `wires` qubits, wire 0 most
// significant) across the split given by in_first. Returns the singular
// values; when rank one, fills left/right with m = left (x) right.
std::vector<double> operator_schmidt(const CMat &m, const std::vector<bool> &in_first,
                                     CMat *left = nullptr, CMat *right = nullptr);

// Whether u (over sides.size() wires) is q-rooted distributable over A|B:
// diagonal or anti-diagonal on q with every nonzero q-block a product across
// (A minus q) | B.
bool matrix_distributable(const CMat &u, int q, const std::vector<Side> &sides);

// Local kernel K_A (x) K_B implementing a q-rooted distributable u with an aux
// on the side opposite q; wires are u's wires followed by the aux.
CMat distributing_kernel(const CMat &u, int q, const std::vector<Side> &sides);

enum class VerifyStatus { Pass, BranchMismatch, NonLocal, InvalidPlan, TooLarge };
const char *verify_status_name(VerifyStatus s);

struct VerificationReport {
  VerifyStatus status = VerifyStatus::Pass;
  double branches = 0;      // ending-outcome combinations covered
  int leaves = 0;           // distinct branches actually simulated
  double max_deviation = 0.0;
  double phase = 0.0;
  int peak_wires = 0;
  std::string detail;

  bool pass() const { return status == VerifyStatus::Pass; }
};

struct VerifyOptions {
  bool direct_uncovered = false;  // apply unassigned global nodes directly
  int max_wires = 12;
  int leaf_cap = 4096;
  double tol = kTol;
};

VerificationReport verify_roots(const ConvertedCircuit &conv,
                                const std::vector<Packet> &roots,
                                const VerifyOptions &opt = {});
VerificationReport verify_plan(const ConvertedCircuit &conv, const PackingPlan &plan,
                               const VerifyOptions &opt = {});
VerificationReport verify_plan(const Circuit &c, const PackingPlan &plan,
                               const VerifyOptions &opt = {});

// A phase-twisted kernel on (q, rest..., e): R_X(phi)^dagger applied to a
// kernel whose q/e block pattern carries u on the 00/11 corners and an
// arbitrary unitary v on the 01/10 middle. u acts on n wires with q first.
CMat u_equivalent_kernel(const CMat &u, const CMat &v, double phi);

}  // namespace dqc
