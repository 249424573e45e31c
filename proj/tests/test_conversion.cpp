#include <gtest/gtest.h>

#include "dqc/bench.hpp"
#include "dqc/conversion.hpp"
#include "fixtures.hpp"

using namespace dqc;

TEST(Conversion, CnotBecomesOnePiNode) {
  ConvertedCircuit conv = to_control_phase_form(fixtures::cnot());
  ASSERT_EQ(conv.nodes.size(), 1u);
  const CpNode &n = conv.nodes[0];
  EXPECT_TRUE(n.global);
  EXPECT_TRUE(n.is_pi());
  EXPECT_EQ(n.q1, 0);
  EXPECT_EQ(n.cu_target, 1);
  // The target is dressed by one Hadamard-like word on each side.
  EXPECT_EQ(conv.lines[1].words[0].cls.tag, SqTag::OneHadamard);
  EXPECT_EQ(conv.lines[1].words[1].cls.tag, SqTag::OneHadamard);
  EXPECT_TRUE(conv.lines[0].words[0].cls.is_d());
}

TEST(Conversion, EqualBranchesDropTheNode) {
  Circuit c = fixtures::make({"a", "b"}, "AB");
  c.append(Gate::cu(0, 1, gate_h(), std::polar(1.0, 0.4) * gate_h()));
  c.append(Gate::cp(0, 1, kTwoPi));
  ConvertedCircuit conv = to_control_phase_form(c);
  EXPECT_TRUE(conv.nodes.empty());
  EXPECT_TRUE(equal_up_to_global_phase(converted_unitary(conv), full_unitary(c)).equal);
}

TEST(Conversion, WordBookkeeping) {
  ConvertedCircuit conv = to_control_phase_form(fixtures::five_node_packet());
  for (const QubitLine &line : conv.lines) {
    ASSERT_EQ(line.words.size(), line.nodes.size() + 1);
    EXPECT_TRUE(line.words.front().boundary);
    EXPECT_TRUE(line.words.back().boundary);
    for (size_t k = 1; k + 1 < line.words.size(); ++k) {
      EXPECT_FALSE(line.words[k].boundary);
      EXPECT_EQ(line.words[k].t_to, conv.node(line.nodes[k]).t);
      EXPECT_EQ(line.words[k].t_from, conv.node(line.nodes[k - 1]).t);
    }
  }
  EXPECT_EQ(conv.count_global(), 9);
}

// Property: the control-phase form implements the source circuit exactly, and
// each node's dressing reproduces its controlled-unitary.
TEST(Conversion, PreservesUnitary) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    RandomSpec s;
    s.n_qubits = 2 + seed % 4;
    s.depth = 2 + seed % 12;
    s.seed = seed;
    Circuit c = gen_random(s);
    ConvertedCircuit conv = to_control_phase_form(c);
    CMat a = converted_unitary(conv), b = full_unitary(c);
    EXPECT_LT(max_abs(a - b), 1e-9) << "seed " << seed;
    Circuit flat = conv.as_circuit();
    for (const auto &col : flat.columns())
      for (const Gate &g : col) EXPECT_NE(g.kind, GateKind::Controlled);
    EXPECT_TRUE(equal_up_to_global_phase(full_unitary(flat), b).equal);
    for (const CpNode &n : conv.nodes) {
      EXPECT_GT(n.theta, 0.0);
      EXPECT_LT(n.theta, kTwoPi);
    }
  }
}

TEST(Conversion, ConnectingGateForm) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    CMat u0 = random_unitary_2x2(rng), u1 = random_unitary_2x2(rng);
    Circuit c = fixtures::make({"a", "b"}, "AB");
    c.append(Gate::cu(0, 1, u0, u1));
    ConvertedCircuit conv = to_control_phase_form(c);
    ASSERT_EQ(conv.nodes.size(), 1u);
    CMat rebuilt = kron(conv.lines[0].words[1].m, conv.lines[1].words[1].m) *
                   gate_cp(conv.nodes[0].theta) *
                   kron(conv.lines[0].words[0].m, conv.lines[1].words[0].m);
    EXPECT_LT(max_abs(rebuilt - controlled(u0, u1)), 1e-9);
  }
}
