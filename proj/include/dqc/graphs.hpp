#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dqc/packets.hpp"

namespace dqc {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;       // per vertex
  std::vector<std::string> edge_labels;  // per edge

  int add_vertex(const std::string &label);
  void add_edge(int a, int b, const std::string &label = "");
  std::vector<int> degrees() const;
  bool has_edge(int a, int b) const;
};

// One edge per global node, between the packets holding its two endpoints.
struct PackingGraph {
  Graph g;
  std::vector<int> edge_node;  // inducing CpNode id per edge
};

PackingGraph build_packing_graph(const PacketSet &set, const ConvertedCircuit &conv);

enum class ConflictLevel { Packet, Kernel };

struct ConflictGraph {
  ConflictLevel level = ConflictLevel::Kernel;
  Graph g;
  std::vector<KernelRef> kernels;   // Kernel level: vertex -> hop kernel
  std::vector<int> kernel_packet;   // Kernel level: vertex -> owning packet
};

// Hops on opposite sides clash over a shared global unit; hops on one qubit
// clash when their spans cross.
bool hops_conflict(const KernelRef &a, const KernelRef &b,
                   const ConvertedCircuit &conv);

// Conflicts among the hop kernels of the given packets.
ConflictGraph build_intrinsic_conflicts(const std::vector<Packet> &packets,
                                        const ConvertedCircuit &conv,
                                        ConflictLevel level);

// Auxiliary-qubit occupancy of a root packet. Times are scaled so a root
// spanning [s, e] with s < e holds its aux over the open interval
// (3s + 2, 3e), and a single-node root holds a short interval inside
// (3t, 3t + 2), staggered by its rank among single-node roots at t.
struct Occupancy {
  int root = -1;
  Side aux_side = Side::B;
  double lo = 0.0, hi = 0.0;
};

std::vector<Occupancy> occupancy(const std::vector<Packet> &roots,
                                 const Circuit &c);
bool overlaps(const Occupancy &a, const Occupancy &b);
// Maximum number of pairwise overlapping intervals on the given side.
int chromatic_number(const std::vector<Occupancy> &occ, Side aux_side);
// First-fit by left endpoint into at most `colors` colors. When no color is
// free the interval joins the color whose last interval ends earliest.
std::vector<int> first_fit_coloring(const std::vector<Occupancy> &occ,
                                    Side aux_side, int colors);

// Overlap graph among roots whose aux lives on `aux_side`; vertex ids are
// root indices (roots on the other side stay isolated).
ConflictGraph build_extrinsic_conflicts(const std::vector<Packet> &roots,
                                        const Circuit &c, Side aux_side);

std::string export_dot(const Graph &g, const std::string &name);

}  // namespace dqc
