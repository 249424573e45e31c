#include <gtest/gtest.h>

#include "dqc/bench.hpp"
#include "dqc/graphs.hpp"
#include "fixtures.hpp"

using namespace dqc;

namespace {

Packet root(int q, std::vector<int> T) {
  Packet p;
  p.q = q;
  p.T = std::move(T);
  return p;
}

KernelRef hop(int q, int t1, int t2, std::vector<int> units) {
  KernelRef k;
  k.kind = KernelKind::Hop;
  k.q = q;
  k.t1 = t1;
  k.t2 = t2;
  k.units = std::move(units);
  return k;
}

}  // namespace

TEST(PackingGraph, CnotHasOneEdge) {
  ConvertedCircuit conv = to_control_phase_form(fixtures::cnot());
  PackingGraph pg = build_packing_graph(build_packets(conv), conv);
  EXPECT_EQ(pg.g.n, 2);
  ASSERT_EQ(pg.g.edges.size(), 1u);
  EXPECT_EQ(pg.edge_node[0], 0);
}

TEST(PackingGraph, MissingPacketIsReported) {
  ConvertedCircuit conv = to_control_phase_form(fixtures::cnot());
  PacketSet set = build_packets(conv);
  set.packets.pop_back();
  try {
    build_packing_graph(set, conv);
    FAIL();
  } catch (const DqcError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UncoveredNode);
  }
}

// Property: one edge per global node, joining the packets of its endpoints.
TEST(PackingGraph, EdgePerGlobalNode) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    RandomSpec s;
    s.n_qubits = 2 + seed % 5;
    s.depth = 3 + seed % 13;
    s.seed = seed;
    ConvertedCircuit conv = to_control_phase_form(gen_random(s));
    PacketSet set = build_packets(conv);
    PackingGraph pg = build_packing_graph(set, conv);
    EXPECT_EQ(static_cast<int>(pg.g.edges.size()), conv.count_global());
    EXPECT_EQ(pg.g.n, static_cast<int>(set.packets.size()));
    for (size_t e = 0; e < pg.g.edges.size(); ++e) {
      const CpNode &n = conv.node(pg.edge_node[e]);
      auto [a, b] = pg.g.edges[e];
      EXPECT_EQ(set.packet_of(n.q1, n.t) + set.packet_of(n.q2, n.t), a + b);
    }
  }
}

TEST(Conflicts, CrossedHopsShareOneEdge) {
  ConvertedCircuit conv = to_control_phase_form(fixtures::crossed_hops());
  PacketSet set = build_packets(conv);
  auto kg = build_intrinsic_conflicts(set.packets, conv, ConflictLevel::Kernel);
  EXPECT_EQ(kg.g.n, 2);
  EXPECT_EQ(kg.g.edges.size(), 1u);
  auto pg = build_intrinsic_conflicts(set.packets, conv, ConflictLevel::Packet);
  EXPECT_EQ(pg.g.n, static_cast<int>(set.packets.size()));
  EXPECT_EQ(pg.g.edges.size(), 1u);
}

TEST(Conflicts, SameQubitRule) {
  ConvertedCircuit conv = to_control_phase_form(fixtures::five_node_packet());
  EXPECT_TRUE(hops_conflict(hop(0, 5, 9, {8}), hop(0, 8, 14, {9, 13}), conv));
  EXPECT_FALSE(hops_conflict(hop(0, 1, 9, {2, 8}), hop(0, 2, 8, {4}), conv));
  EXPECT_FALSE(hops_conflict(hop(0, 1, 5, {2}), hop(0, 5, 9, {8}), conv));
}

TEST(Occupancy, IntervalModel) {
  Circuit c = fixtures::make({"a", "b", "c"}, "ABB");
  std::vector<Packet> roots = {root(0, {2, 5}), root(1, {4}), root(2, {4})};
  auto occ = occupancy(roots, c);
  EXPECT_EQ(occ[0].aux_side, Side::B);
  EXPECT_EQ(occ[0].lo, 8.0);
  EXPECT_EQ(occ[0].hi, 15.0);
  EXPECT_EQ(occ[1].aux_side, Side::A);
  for (int r : {1, 2}) {
    EXPECT_GT(occ[r].lo, 12.0);
    EXPECT_LT(occ[r].hi, 14.0);
  }
  EXPECT_FALSE(overlaps(occ[1], occ[2]));
  EXPECT_EQ(chromatic_number(occ, Side::B), 1);
  EXPECT_EQ(chromatic_number(occ, Side::A), 1);
}

TEST(Occupancy, TouchingRootsShareAnAux) {
  Circuit c = fixtures::make({"a", "b"}, "AB");
  std::vector<Packet> roots = {root(0, {1, 3}), root(0, {3, 6}), root(0, {3}), root(0, {2})};
  auto occ = occupancy(roots, c);
  EXPECT_FALSE(overlaps(occ[0], occ[1]));
  // In one column: roots ending there, then single-node roots, then roots starting.
  EXPECT_FALSE(overlaps(occ[0], occ[2]));
  EXPECT_FALSE(overlaps(occ[1], occ[2]));
  EXPECT_TRUE(overlaps(occ[0], occ[3]));
  EXPECT_EQ(chromatic_number(occ, Side::B), 2);
}

// Property: first-fit by left endpoint never needs more than chi colors.
TEST(Occupancy, FirstFitIsOptimalOnIntervals) {
  Rng rng(4);
  Circuit c = fixtures::make({"a", "b"}, "AB");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Packet> roots;
    const int k = 1 + rng.index(10);
    for (int i = 0; i < k; ++i) {
      int s = rng.index(20), len = rng.index(6);
      roots.push_back(len == 0 ? root(0, {s}) : root(0, {s, s + len}));
    }
    auto occ = occupancy(roots, c);
    int chi = chromatic_number(occ, Side::B);
    auto color = first_fit_coloring(occ, Side::B, chi);
    for (int i = 0; i < k; ++i) {
      EXPECT_GE(color[i], 0);
      EXPECT_LT(color[i], chi);
      for (int j = i + 1; j < k; ++j)
        if (overlaps(occ[i], occ[j])) EXPECT_NE(color[i], color[j]);
    }
    auto ex = build_extrinsic_conflicts(roots, c, Side::B);
    int edges = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) edges += overlaps(occ[i], occ[j]);
    EXPECT_EQ(static_cast<int>(ex.g.edges.size()), edges);
  }
}

TEST(Dot, EmptyAndLabelled) {
  Graph g;
  std::string empty = export_dot(g, "packing");
  EXPECT_EQ(empty.rfind("graph packing {", 0), 0u);
  EXPECT_EQ(empty.find("--"), std::string::npos);
  g.add_vertex("q0{1,2}");
  g.add_vertex("q1{1}");
  g.add_edge(0, 1, "t1");
  std::string dot = export_dot(g, "packing");
  EXPECT_NE(dot.find("v0 -- v1"), std::string::npos);
  EXPECT_NE(dot.find("q0{1,2}"), std::string::npos);
}
