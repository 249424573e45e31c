#pragma once

#include <string>
#include <vector>

#include "dqc/matrix.hpp"

namespace dqc {

enum class Side { A, B };

inline Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }
inline const char *side_name(Side s) { return s == Side::A ? "A" : "B"; }

enum class GateKind { Single, Controlled, ControlPhase };

struct Gate {
  GateKind kind = GateKind::Single;
  std::vector<int> qubits;  // Controlled: {control, target}
  CMat matrix;              // Single
  CMat u0, u1;              // Controlled
  double theta = 0.0;       // ControlPhase

  static Gate single(int q, const CMat &m);
  static Gate cu(int control, int target, const CMat &u0, const CMat &u1);
  static Gate cp(int q1, int q2, double theta);
  static Gate cnot(int control, int target);
  static Gate cz(int q1, int q2) { return cp(q1, q2, kPi); }

  bool two_qubit() const { return kind != GateKind::Single; }
  // 2x2 or 4x4 operator with qubits[0] as the most significant wire.
  CMat unitary() const;
};

class Circuit {
 public:
  Circuit() = default;
  Circuit(std::vector<std::string> names, std::vector<Side> sides);

  int num_qubits() const { return static_cast<int>(names_.size()); }
  int depth() const { return static_cast<int>(columns_.size()); }
  const std::vector<std::string> &names() const { return names_; }
  const std::string &name(int q) const { return names_.at(q); }
  Side side(int q) const { return sides_.at(q); }
  const std::vector<Side> &sides() const { return sides_; }
  int index_of(const std::string &name) const;  // -1 when unknown

  const std::vector<std::vector<Gate>> &columns() const { return columns_; }
  const std::vector<Gate> &column(int t) const { return columns_.at(t); }

  // ASAP placement: the gate lands one column after the latest column
  // already touching any of its qubits.
  int append(const Gate &g);
  // Places the gate in an explicit column; throws OverlappingGates if the
  // column already touches one of its qubits.
  void place(int t, const Gate &g);

  bool is_global(const Gate &g) const;
  int count_two_qubit() const;
  int count_global() const;

 private:
  std::vector<std::string> names_;
  std::vector<Side> sides_;
  std::vector<std::vector<Gate>> columns_;
  std::vector<int> frontier_;
};

Circuit parse_circuit(const std::string &text);
Circuit load_circuit(const std::string &path);
std::string serialize_circuit(const Circuit &c);

bool is_global(const Gate &g, const Circuit &c);
CMat full_unitary(const Circuit &c);

}  // namespace dqc
