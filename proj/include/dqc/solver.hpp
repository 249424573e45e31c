#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dqc/graphs.hpp"

namespace dqc {

enum class MvcMode { Auto, Exact, Greedy };

constexpr int kExactMvcLimit = 40;
constexpr int kMaxOptimalCovers = 32;
constexpr int kGreedyRestarts = 8;

// A minimum (Exact) or heuristic (Greedy) vertex cover, sorted ascending.
std::vector<int> min_vertex_cover(const Graph &g, MvcMode mode, uint64_t seed = 1);
// Up to kMaxOptimalCovers optimal covers (exact), or the deterministic greedy
// cover plus seeded randomized restarts, deduplicated, in discovery order.
std::vector<std::vector<int>> vertex_cover_candidates(const Graph &g, MvcMode mode,
                                                      uint64_t seed = 1);
bool is_vertex_cover(const Graph &g, const std::vector<int> &cover);

struct AuxCount {
  int a = 0, b = 0;
  int total() const { return a + b; }
  int &at(Side s) { return s == Side::A ? a : b; }
  int at(Side s) const { return s == Side::A ? a : b; }
  bool operator==(const AuxCount &o) const { return a == o.a && b == o.b; }
};

struct PackingPlan {
  std::vector<Packet> roots;
  std::vector<KernelRef> removed_embeddings;
  std::vector<KernelRef> extended;
  int ebits = 0;
  AuxCount aux;
  int baseline = 0;
  int cover_size = 0;
  int candidate = -1;
  int conflict_edges = 0;
};

struct SolverOptions {
  MvcMode mvc = MvcMode::Auto;
  uint64_t seed = 1;
  int threads = 1;
  bool neighbouring = true;
  bool hopping = true;
  bool extended = true;
  bool resolve_conflicts = true;  // off only for negative controls
};

struct ResolveResult {
  std::vector<Packet> roots;
  std::vector<KernelRef> removed;
  int conflict_edges = 0;
};

// Removes a minimum vertex cover of the kernel-level intrinsic conflict graph
// among the roots' hop kernels, splitting each affected root.
ResolveResult resolve_intrinsic(const std::vector<Packet> &roots,
                                const ConvertedCircuit &conv,
                                MvcMode mode = MvcMode::Auto);

// Pieces of a root after removing one of its embeddings.
std::pair<Packet, Packet> split_root(const Packet &root, const KernelRef &embedding);

// Drops roots whose nodes are all covered by other roots (hosts are kept).
std::vector<Packet> prune_redundant_roots(const std::vector<Packet> &roots,
                                          const ConvertedCircuit &conv);

bool plan_covers_all(const std::vector<Packet> &roots, const ConvertedCircuit &conv);

std::vector<Packet> extended_embedding_pass(const std::vector<Packet> &roots,
                                            const ConvertedCircuit &conv,
                                            std::vector<KernelRef> *merged = nullptr);

AuxCount aux_required(const std::vector<Packet> &roots, const Circuit &c);

// Candidate plans, best first.
std::vector<PackingPlan> pack_unlimited(const ConvertedCircuit &conv,
                                        const PacketSet &set,
                                        const PackingGraph &pg,
                                        const SolverOptions &opt = {});

PackingPlan pack_limited(const ConvertedCircuit &conv, const PacketSet &set,
                         const PackingGraph &pg, AuxCount limits,
                         const SolverOptions &opt = {});

struct Pipeline {
  ConvertedCircuit conv;
  PacketSet packets;
  PackingGraph graph;
  PackingPlan plan;
};

// parse-free convenience: convert, identify, build graphs and solve.
Pipeline run_pipeline(const Circuit &c, const SolverOptions &opt = {},
                      std::optional<AuxCount> limits = std::nullopt);

}  // namespace dqc
