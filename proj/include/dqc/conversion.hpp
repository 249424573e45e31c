#pragma once

#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

struct CpNode {
  int id = -1;
  int q1 = -1, q2 = -1;  // for a converted controlled-unitary: control, target
  int t = -1;            // column of the original circuit
  double theta = 0.0;    // snapped, in (0, 2pi)
  bool global = false;
  int cu_target = -1;    // target qubit of the source controlled-unitary, if any

  int partner(int q) const { return q == q1 ? q2 : q1; }
  bool is_pi() const { return theta == kPi; }
};

// Product of all single-qubit content on one qubit between two nodes.
struct Word {
  CMat m;
  SingleQubitClass cls;
  int t_from = -1;  // depth of the preceding node, -1 before the first
  int t_to = -1;    // depth of the following node, -1 after the last
  bool boundary = false;
};

// Node ids on one qubit in depth order; words[k] sits right before node k and
// words.back() trails the last node, so words.size() == nodes.size() + 1.
struct QubitLine {
  std::vector<int> nodes;
  std::vector<Word> words;

  int index_at(int t, const std::vector<CpNode> &all) const;
};

struct ConvertedCircuit {
  Circuit source;
  std::vector<CpNode> nodes;
  std::vector<QubitLine> lines;

  int num_qubits() const { return source.num_qubits(); }
  const CpNode &node(int id) const { return nodes.at(id); }
  // Node on q at depth t, or nullptr.
  const CpNode *node_at(int q, int t) const;
  int count_global() const;
  // Control-phase form as a plain circuit (words as u1 gates, nodes as cp).
  Circuit as_circuit() const;
};

ConvertedCircuit to_control_phase_form(const Circuit &c);
std::vector<Word> collect_inter_node_words(const ConvertedCircuit &conv, int q);

// Dense unitary of the converted form; used to cross-check the rewrite.
CMat converted_unitary(const ConvertedCircuit &conv);

}  // namespace dqc
