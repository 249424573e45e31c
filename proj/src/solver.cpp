#include "dqc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace dqc {

bool is_vertex_cover(const Graph &g, const std::vector<int> &cover) {
  std::vector<bool> in(g.n, false);
  for (int v : cover) in[v] = true;
  for (auto [a, b] : g.edges)
    if (!in[a] && !in[b]) return false;
  return true;
}

namespace {

// Uniform index in [0, k) from a 64-bit engine, identical on every platform.
int uniform_index(std::mt19937_64 &rng, int k) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::min(k - 1, static_cast<int>(u * k));
}

std::vector<int> prune_cover(const Graph &g, std::vector<int> cover) {
  std::sort(cover.begin(), cover.end());
  std::vector<bool> in(g.n, false);
  for (int v : cover) in[v] = true;
  for (int v : cover) {
    bool needed = false;
    for (auto [a, b] : g.edges) {
      if (a == v && !in[b]) needed = true;
      if (b == v && !in[a]) needed = true;
      if (needed) break;
    }
    if (!needed) in[v] = false;
  }
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v)
    if (in[v]) out.push_back(v);
  return out;
}

std::vector<int> greedy_cover(const Graph &g, std::mt19937_64 *rng) {
  std::vector<bool> covered(g.edges.size(), false);
  std::vector<int> cover;
  if (g.n == 0) return cover;
  while (true) {
    std::vector<int> deg(g.n, 0);
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (!covered[e]) {
        ++deg[g.edges[e].first];
        ++deg[g.edges[e].second];
      }
    int top = *std::max_element(deg.begin(), deg.end());
    if (top == 0) break;
    std::vector<int> ties;
    for (int v = 0; v < g.n; ++v)
      if (deg[v] == top) ties.push_back(v);
    int v = rng ? ties[uniform_index(*rng, static_cast<int>(ties.size()))] : ties[0];
    cover.push_back(v);
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].first == v || g.edges[e].second == v) covered[e] = true;
  }
  return prune_cover(g, cover);
}

class ExactCover {
 public:
  explicit ExactCover(const Graph &g) : n_(g.n), adj_(g.n, 0) {
    for (auto [a, b] : g.edges) {
      if (a == b) {
        forced_ |= bit(a);
        continue;
      }
      adj_[a] |= bit(b);
      adj_[b] |= bit(a);
    }
  }

  std::vector<std::vector<int>> solve(int upper_bound) {
    best_ = upper_bound;
    search(forced_);
    std::vector<std::vector<int>> out;
    for (uint64_t c : found_) {
      std::vector<int> v;
      for (int i = 0; i < n_; ++i)
        if (c & bit(i)) v.push_back(i);
      out.push_back(v);
    }
    return out;
  }

 private:
  static uint64_t bit(int i) { return uint64_t(1) << i; }

  int matching_bound(uint64_t residual) const {
    uint64_t used = 0;
    int m = 0;
    for (int v = 0; v < n_; ++v) {
      if (!(residual & bit(v)) || (used & bit(v))) continue;
      uint64_t free_nb = adj_[v] & residual & ~used;
      if (!free_nb) continue;
      int w = std::countr_zero(free_nb);
      used |= bit(v) | bit(w);
      ++m;
    }
    return m;
  }

  void record(uint64_t chosen) {
    int size = std::popcount(chosen);
    if (size < best_) {
      best_ = size;
      found_.clear();
    }
    if (size == best_ && static_cast<int>(found_.size()) < kMaxOptimalCovers &&
        std::find(found_.begin(), found_.end(), chosen) == found_.end())
      found_.push_back(chosen);
  }

  void search(uint64_t chosen) {
    const uint64_t all = n_ == 64 ? ~uint64_t(0) : bit(n_) - 1;
    const uint64_t residual = all & ~chosen;
    // Degree-1 reduction when the neighbour is the better pick.
    bool changed = true;
    uint64_t res = residual;
    while (changed) {
      changed = false;
      for (int v = 0; v < n_; ++v) {
        if (!(res & bit(v))) continue;
        uint64_t nb = adj_[v] & res;
        if (std::popcount(nb) != 1) continue;
        int w = std::countr_zero(nb);
        if (std::popcount(adj_[w] & res) < 2) continue;
        chosen |= bit(w);
        res &= ~bit(w);
        changed = true;
      }
    }
    const int size = std::popcount(chosen);
    const bool full = static_cast<int>(found_.size()) >= kMaxOptimalCovers;
    int lb = matching_bound(res);
    if (size + lb > best_ || (full && size + lb >= best_)) return;

    int pick = -1, top = 0;
    for (int v = 0; v < n_; ++v) {
      if (!(res & bit(v))) continue;
      int d = std::popcount(adj_[v] & res);
      if (d > top) {
        top = d;
        pick = v;
      }
    }
    if (pick < 0) {
      record(chosen);
      return;
    }
    search(chosen | bit(pick));
    search(chosen | (adj_[pick] & res));
  }

  int n_;
  std::vector<uint64_t> adj_;
  uint64_t forced_ = 0;
  int best_ = INT_MAX;
  std::vector<uint64_t> found_;
};

MvcMode effective_mode(const Graph &g, MvcMode mode) {
  if (mode == MvcMode::Exact && g.n > kExactMvcLimit)
    throw DqcError(ErrorKind::TooLargeForExact,
                   std::to_string(g.n) + " vertices exceed the exact limit of " +
                       std::to_string(kExactMvcLimit));
  if (mode == MvcMode::Auto)
    return g.n <= kExactMvcLimit ? MvcMode::Exact : MvcMode::Greedy;
  return mode;
}

}  // namespace

std::vector<std::vector<int>> vertex_cover_candidates(const Graph &g, MvcMode mode,
                                                      uint64_t seed) {
  mode = effective_mode(g, mode);
  std::vector<int> greedy = greedy_cover(g, nullptr);
  if (mode == MvcMode::Exact) {
    auto covers = ExactCover(g).solve(static_cast<int>(greedy.size()));
    if (covers.empty()) covers.push_back(greedy);
    return covers;
  }
  std::vector<std::vector<int>> out = {greedy};
  std::mt19937_64 rng(seed);
  for (int r = 0; r < kGreedyRestarts; ++r) {
    auto c = greedy_cover(g, &rng);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::vector<int> min_vertex_cover(const Graph &g, MvcMode mode, uint64_t seed) {
  mode = effective_mode(g, mode);
  if (mode == MvcMode::Greedy) return greedy_cover(g, nullptr);
  auto covers = vertex_cover_candidates(g, mode, seed);
  return covers.front();
}

std::pair<Packet, Packet> split_root(const Packet &root, const KernelRef &embedding) {
  Packet left, right;
  left.q = right.q = root.q;
  bool after = false;
  for (const KernelRef &k : root.kernels) {
    if (!after && k == embedding) {
      after = true;
      continue;
    }
    (after ? right : left).kernels.push_back(k);
  }
  if (!after)
    throw DqcError(ErrorKind::InvalidPlan, "embedding not part of the root");
  for (int t : root.T) (t <= embedding.t1 ? left : right).T.push_back(t);
  return {left, right};
}

namespace {

// Number of roots holding each global node, keyed by node id.
std::vector<int> cover_counts(const std::vector<Packet> &roots,
                              const ConvertedCircuit &conv) {
  std::vector<int> count(conv.nodes.size(), 0);
  for (const Packet &r : roots)
    for (int t : r.T) {
      const CpNode *n = conv.node_at(r.q, t);
      if (n) ++count[n->id];
    }
  return count;
}

void clear_orphan_hosts(std::vector<Packet> &roots) {
  for (Packet &h : roots) {
    if (!h.extended_host) continue;
    bool used = false;
    for (const Packet &r : roots)
      for (const KernelRef &k : r.kernels)
        used |= k.kind == KernelKind::Extended && k.q == h.q && k.gap == h.T[0];
    h.extended_host = used;
  }
}

}  // namespace

std::vector<Packet> prune_redundant_roots(const std::vector<Packet> &roots,
                                          const ConvertedCircuit &conv) {
  std::vector<Packet> cur = roots;
  while (true) {
    std::vector<int> count = cover_counts(cur, conv);
    int drop = -1;
    for (size_t r = 0; r < cur.size() && drop < 0; ++r) {
      if (cur[r].extended_host) continue;
      bool redundant = true;
      for (int t : cur[r].T) {
        const CpNode *n = conv.node_at(cur[r].q, t);
        if (!n || count[n->id] < 2) redundant = false;
      }
      if (redundant) drop = static_cast<int>(r);
    }
    if (drop < 0) break;
    cur.erase(cur.begin() + drop);
    clear_orphan_hosts(cur);
  }
  return cur;
}

bool plan_covers_all(const std::vector<Packet> &roots, const ConvertedCircuit &conv) {
  std::vector<int> count = cover_counts(roots, conv);
  for (const CpNode &n : conv.nodes)
    if (n.global && count[n.id] == 0) return false;
  return true;
}

ResolveResult resolve_intrinsic(const std::vector<Packet> &roots,
                                const ConvertedCircuit &conv, MvcMode mode) {
  ResolveResult res;
  ConflictGraph cg = build_intrinsic_conflicts(roots, conv, ConflictLevel::Kernel);
  res.conflict_edges = static_cast<int>(cg.g.edges.size());
  if (cg.g.edges.empty()) {
    res.roots = roots;
    return res;
  }
  std::vector<int> cover = min_vertex_cover(cg.g, mode);
  std::map<int, std::vector<KernelRef>> by_packet;
  for (int v : cover) {
    by_packet[cg.kernel_packet[v]].push_back(cg.kernels[v]);
    res.removed.push_back(cg.kernels[v]);
  }
  for (size_t p = 0; p < roots.size(); ++p) {
    auto it = by_packet.find(static_cast<int>(p));
    if (it == by_packet.end()) {
      res.roots.push_back(roots[p]);
      continue;
    }
    Packet rest = roots[p];
    std::vector<KernelRef> cuts = it->second;
    std::sort(cuts.begin(), cuts.end(),
              [](const KernelRef &a, const KernelRef &b) { return a.t1 < b.t1; });
    for (const KernelRef &k : cuts) {
      auto [left, right] = split_root(rest, k);
      res.roots.push_back(left);
      rest = right;
    }
    res.roots.push_back(rest);
  }
  return res;
}

namespace {

int pi_parity(double phi) {
  double r = reduce_phase(phi);
  double n = std::round(r / kPi);
  if (std::abs(r - n * kPi) > kTol) return -1;
  return static_cast<int>(n) % 2;
}

bool spans(const Packet &r, int t, bool hops_only) {
  for (const KernelRef &k : r.kernels) {
    if (!k.is_embedding()) continue;
    if (hops_only && k.kind == KernelKind::Neighbour) continue;
    if (k.t1 < t && t < k.t2) return true;
  }
  return false;
}

}  // namespace

std::vector<Packet> extended_embedding_pass(const std::vector<Packet> &roots,
                                            const ConvertedCircuit &conv,
                                            std::vector<KernelRef> *merged) {
  std::vector<Packet> cur = roots;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t h = 0; h < cur.size() && !changed; ++h) {
      Packet &host = cur[h];
      if (host.T.size() != 1 || host.extended_host) continue;
      const int q = host.q, t = host.T[0];
      const QubitLine &line = conv.lines[q];
      const int k = line.index_at(t, conv.nodes);
      if (k < 1 || k + 1 >= static_cast<int>(line.nodes.size())) continue;
      const int t1 = conv.node(line.nodes[k - 1]).t;
      const int t2 = conv.node(line.nodes[k + 1]).t;
      int p1 = -1, p2 = -1;
      for (size_t r = 0; r < cur.size(); ++r) {
        if (r == h || cur[r].q != q || cur[r].extended_host) continue;
        if (cur[r].max_t() == t1) p1 = static_cast<int>(r);
        if (cur[r].min_t() == t2) p2 = static_cast<int>(r);
      }
      if (p1 < 0 || p2 < 0 || p1 == p2) continue;
      const Word &w1 = line.words[k], &w2 = line.words[k + 1];
      if (w1.cls.tag != SqTag::OneHadamard || w2.cls.tag != SqTag::OneHadamard)
        continue;
      const int parity = pi_parity(w1.cls.gamma + w2.cls.alpha);
      if (parity < 0) continue;
      const int partner = conv.node(line.nodes[k]).partner(q);
      bool blocked = false;
      for (const Packet &r : cur) {
        if (r.q == q && spans(r, t, false)) blocked = true;
        if (r.q == partner && spans(r, t, true)) blocked = true;
      }
      if (blocked) continue;

      KernelRef ext;
      ext.kind = KernelKind::Extended;
      ext.q = q;
      ext.t1 = t1;
      ext.t2 = t2;
      ext.gap = t;
      ext.parity = parity;
      Packet joined = cur[p1];
      joined.T.insert(joined.T.end(), cur[p2].T.begin(), cur[p2].T.end());
      joined.kernels.push_back(ext);
      joined.kernels.insert(joined.kernels.end(), cur[p2].kernels.begin(),
                            cur[p2].kernels.end());
      host.extended_host = true;
      cur[p1] = joined;
      cur.erase(cur.begin() + p2);
      if (merged) merged->push_back(ext);
      changed = true;
    }
  }
  return cur;
}

AuxCount aux_required(const std::vector<Packet> &roots, const Circuit &c) {
  auto occ = occupancy(roots, c);
  AuxCount aux;
  aux.a = chromatic_number(occ, Side::A);
  aux.b = chromatic_number(occ, Side::B);
  return aux;
}

namespace {

int target_roots(const PackingPlan &p, const ConvertedCircuit &conv) {
  int n = 0;
  for (const Packet &r : p.roots)
    for (int t : r.T) {
      const CpNode *node = conv.node_at(r.q, t);
      if (node && node->cu_target == r.q) ++n;
    }
  return n;
}

struct PlanOrder {
  const ConvertedCircuit &conv;
  bool operator()(const PackingPlan &a, const PackingPlan &b) const {
    if (a.ebits != b.ebits) return a.ebits < b.ebits;
    if (a.aux.total() != b.aux.total()) return a.aux.total() < b.aux.total();
    int ta = target_roots(a, conv), tb = target_roots(b, conv);
    if (ta != tb) return ta < tb;
    return a.candidate < b.candidate;
  }
};

PackingPlan evaluate_cover(const ConvertedCircuit &conv, const PacketSet &set,
                           const std::vector<int> &cover, int index,
                           const SolverOptions &opt) {
  PackingPlan plan;
  plan.candidate = index;
  plan.cover_size = static_cast<int>(cover.size());
  plan.baseline = conv.count_global();
  std::vector<Packet> roots;
  for (int v : cover) roots.push_back(set.packets[v]);
  if (opt.resolve_conflicts) {
    ResolveResult rr = resolve_intrinsic(roots, conv, opt.mvc == MvcMode::Greedy
                                                          ? MvcMode::Greedy
                                                          : MvcMode::Auto);
    roots = rr.roots;
    plan.removed_embeddings = rr.removed;
    plan.conflict_edges = rr.conflict_edges;
  }
  roots = prune_redundant_roots(roots, conv);
  if (opt.extended) roots = extended_embedding_pass(roots, conv, &plan.extended);
  plan.roots = roots;
  plan.ebits = static_cast<int>(roots.size());
  plan.aux = aux_required(roots, conv.source);
  return plan;
}

template <typename Fn>
void parallel_for(int count, int threads, Fn fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  for (auto &th : pool) th.join();
}

// Splits roots until every color class of each side is overlap-free.
void enforce_limits(PackingPlan &plan, const ConvertedCircuit &conv, AuxCount limits) {
  while (true) {
    auto occ = occupancy(plan.roots, conv.source);
    std::vector<std::pair<int, int>> clashes;
    for (Side s : {Side::A, Side::B}) {
      auto color = first_fit_coloring(occ, s, limits.at(s));
      for (size_t i = 0; i < occ.size(); ++i)
        for (size_t j = i + 1; j < occ.size(); ++j)
          if (color[i] >= 0 && color[i] == color[j] && overlaps(occ[i], occ[j]))
            clashes.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    if (clashes.empty()) break;

    Graph g;
    for (size_t r = 0; r < plan.roots.size(); ++r) g.add_vertex("");
    std::set<int> chosen;
    for (auto [a, b] : clashes) {
      bool sa = plan.roots[a].trivial(), sb = plan.roots[b].trivial();
      if (sa && sb)
        throw DqcError(ErrorKind::InfeasibleLimits,
                       "two single-node roots cannot share an aux qubit");
      if (sa) chosen.insert(b);
      else if (sb) chosen.insert(a);
      else g.add_edge(a, b);
    }
    Graph rest;
    for (int v = 0; v < g.n; ++v) rest.add_vertex("");
    for (auto [a, b] : g.edges)
      if (!chosen.count(a) && !chosen.count(b)) rest.add_edge(a, b);
    if (!rest.edges.empty()) {
      // Compact to the touched vertices so the exact solver stays in range.
      std::vector<int> ids;
      for (auto [a, b] : rest.edges) {
        ids.push_back(a);
        ids.push_back(b);
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      Graph small;
      for (size_t i = 0; i < ids.size(); ++i) small.add_vertex("");
      auto pos = [&](int v) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
      };
      for (auto [a, b] : rest.edges) small.add_edge(pos(a), pos(b));
      for (int v : min_vertex_cover(small, MvcMode::Auto)) chosen.insert(ids[v]);
    }

    std::vector<Packet> next;
    for (size_t r = 0; r < plan.roots.size(); ++r) {
      const Packet &root = plan.roots[r];
      if (!chosen.count(static_cast<int>(r))) {
        next.push_back(root);
        continue;
      }
      double best = -1.0;
      const KernelRef *cut = nullptr;
      for (const KernelRef &k : root.kernels) {
        if (!k.is_embedding()) continue;
        double lo = 3.0 * k.t1, hi = 3.0 * k.t2 + 2.0, score = 0.0;
        for (auto [a, b] : clashes) {
          int other = a == static_cast<int>(r) ? b : (b == static_cast<int>(r) ? a : -1);
          if (other < 0) continue;
          score += std::max(0.0, std::min(hi, occ[other].hi) - std::max(lo, occ[other].lo));
        }
        if (score > best) {
          best = score;
          cut = &k;
        }
      }
      if (!cut) {
        next.push_back(root);
        continue;
      }
      auto [left, right] = split_root(root, *cut);
      plan.removed_embeddings.push_back(*cut);
      next.push_back(left);
      next.push_back(right);
    }
    clear_orphan_hosts(next);
    plan.roots = prune_redundant_roots(next, conv);
  }
  plan.ebits = static_cast<int>(plan.roots.size());
  plan.aux = aux_required(plan.roots, conv.source);
}

}  // namespace

std::vector<PackingPlan> pack_unlimited(const ConvertedCircuit &conv,
                                        const PacketSet &set,
                                        const PackingGraph &pg,
                                        const SolverOptions &opt) {
  auto covers = vertex_cover_candidates(pg.g, opt.mvc, opt.seed);
  std::vector<PackingPlan> plans(covers.size());
  parallel_for(static_cast<int>(covers.size()), opt.threads, [&](int i) {
    plans[i] = evaluate_cover(conv, set, covers[i], i, opt);
  });
  std::stable_sort(plans.begin(), plans.end(), PlanOrder{conv});
  return plans;
}

PackingPlan pack_limited(const ConvertedCircuit &conv, const PacketSet &set,
                         const PackingGraph &pg, AuxCount limits,
                         const SolverOptions &opt) {
  if (limits.a < 1 || limits.b < 1)
    throw DqcError(ErrorKind::InfeasibleLimits, "aux limits must be at least 1");
  auto covers = vertex_cover_candidates(pg.g, opt.mvc, opt.seed);
  std::vector<PackingPlan> plans(covers.size());
  parallel_for(static_cast<int>(covers.size()), opt.threads, [&](int i) {
    plans[i] = evaluate_cover(conv, set, covers[i], i, opt);
    enforce_limits(plans[i], conv, limits);
  });
  return *std::min_element(plans.begin(), plans.end(), PlanOrder{conv});
}

Pipeline run_pipeline(const Circuit &c, const SolverOptions &opt,
                      std::optional<AuxCount> limits) {
  Pipeline p;
  p.conv = to_control_phase_form(c);
  IdentifyOptions io;
  io.neighbouring = opt.neighbouring;
  io.hopping = opt.hopping;
  p.packets = build_packets(p.conv, io);
  p.graph = build_packing_graph(p.packets, p.conv);
  if (limits)
    p.plan = pack_limited(p.conv, p.packets, p.graph, *limits, opt);
  else
    p.plan = pack_unlimited(p.conv, p.packets, p.graph, opt).front();
  return p;
}

}  // namespace dqc
