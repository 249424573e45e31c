#include <gtest/gtest.h>

#include "dqc/bench.hpp"
#include "dqc/graphs.hpp"

using namespace dqc;

TEST(Bench, RandomIsDeterministic) {
  RandomSpec s;
  s.n_qubits = 5;
  s.depth = 12;
  s.seed = 99;
  EXPECT_EQ(serialize_circuit(gen_random(s)), serialize_circuit(gen_random(s)));
  RandomSpec t = s;
  t.seed = 100;
  EXPECT_NE(serialize_circuit(gen_random(s)), serialize_circuit(gen_random(t)));
}

TEST(Bench, UccIsDeterministic) {
  EXPECT_EQ(serialize_circuit(gen_ucc_like(UccSpec::all(4, 7))),
            serialize_circuit(gen_ucc_like(UccSpec::all(4, 7))));
}

TEST(Bench, HalfPartition) {
  RandomSpec s;
  s.n_qubits = 5;
  Circuit c = gen_random(s);
  int on_a = 0;
  for (int q = 0; q < 5; ++q) on_a += c.side(q) == Side::A;
  EXPECT_EQ(on_a, 2);
  s.n_qubits = 1;
  EXPECT_THROW(gen_random(s), DqcError);
}

TEST(Bench, SingleExcitationAcrossTheCut) {
  UccSpec s;
  s.n_qubits = 2;
  s.singles = {{0, 1}};
  Circuit c = gen_ucc_like(s);
  EXPECT_EQ(c.count_global(), 2);
  EXPECT_EQ(to_control_phase_form(c).count_global(), 2);
}

TEST(Bench, FullUccHasManyGlobalNodes) {
  Circuit c = gen_ucc_like(UccSpec::all(4, 7));
  EXPECT_GE(to_control_phase_form(c).count_global(), 48);
}

TEST(Bench, DegenerateRandom) {
  RandomSpec s;
  s.depth = 0;
  EXPECT_EQ(gen_random(s).depth(), 0);
  s.depth = 10;
  s.p_two_qubit = 0.0;
  ConvertedCircuit conv = to_control_phase_form(gen_random(s));
  PackingGraph pg = build_packing_graph(build_packets(conv), conv);
  EXPECT_TRUE(pg.g.edges.empty());
}

TEST(Bench, RandomUnitaries) {
  Rng rng(2);
  for (int w = 1; w <= 3; ++w) EXPECT_TRUE(is_unitary(random_unitary(rng, w)));
  EXPECT_TRUE(is_unitary(random_unitary_2x2(rng)));
}
