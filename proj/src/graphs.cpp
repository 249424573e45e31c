#include "dqc/graphs.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dqc {

int Graph::add_vertex(const std::string &label) {
  labels.push_back(label);
  return n++;
}

void Graph::add_edge(int a, int b, const std::string &label) {
  edges.emplace_back(a, b);
  edge_labels.push_back(label);
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n, 0);
  for (auto [a, b] : edges) {
    ++d[a];
    ++d[b];
  }
  return d;
}

bool Graph::has_edge(int a, int b) const {
  for (auto [x, y] : edges)
    if ((x == a && y == b) || (x == b && y == a)) return true;
  return false;
}

namespace {

std::string packet_label(const Packet &p, const Circuit &c) {
  std::ostringstream os;
  os << c.name(p.q) << ":{";
  for (size_t i = 0; i < p.T.size(); ++i) os << (i ? "," : "") << p.T[i];
  os << "}";
  return os.str();
}

std::string kernel_label(const KernelRef &k, const Circuit &c) {
  std::ostringstream os;
  os << kernel_kind_name(k.kind) << "(" << c.name(k.q) << "," << k.t1 << ","
     << k.t2 << ")";
  return os.str();
}

}  // namespace

PackingGraph build_packing_graph(const PacketSet &set, const ConvertedCircuit &conv) {
  PackingGraph pg;
  for (const Packet &p : set.packets) pg.g.add_vertex(packet_label(p, conv.source));
  for (const CpNode &n : conv.nodes) {
    if (!n.global) continue;
    int a = set.packet_of(n.q1, n.t), b = set.packet_of(n.q2, n.t);
    if (a < 0 || b < 0)
      throw DqcError(ErrorKind::UncoveredNode,
                     "global node at depth " + std::to_string(n.t) +
                         " has no packet");
    pg.g.add_edge(a, b, "t=" + std::to_string(n.t));
    pg.edge_node.push_back(n.id);
  }
  return pg;
}

bool hops_conflict(const KernelRef &a, const KernelRef &b,
                   const ConvertedCircuit &conv) {
  if (a.kind != KernelKind::Hop || b.kind != KernelKind::Hop) return false;
  if (a.q == b.q) {
    auto crosses = [](const KernelRef &x, const KernelRef &y) {
      return x.t1 < y.t1 && y.t1 < x.t2 && x.t2 < y.t2;
    };
    return crosses(a, b) || crosses(b, a);
  }
  if (conv.source.side(a.q) == conv.source.side(b.q)) return false;
  for (int t : a.units) {
    if (!std::binary_search(b.units.begin(), b.units.end(), t)) continue;
    const CpNode *n = conv.node_at(a.q, t);
    if (n && n->global && n->is_pi() && n->partner(a.q) == b.q) return true;
  }
  return false;
}

ConflictGraph build_intrinsic_conflicts(const std::vector<Packet> &packets,
                                        const ConvertedCircuit &conv,
                                        ConflictLevel level) {
  ConflictGraph kg;
  kg.level = ConflictLevel::Kernel;
  for (size_t p = 0; p < packets.size(); ++p)
    for (const KernelRef &k : packets[p].kernels)
      if (k.kind == KernelKind::Hop) {
        kg.g.add_vertex(kernel_label(k, conv.source));
        kg.kernels.push_back(k);
        kg.kernel_packet.push_back(static_cast<int>(p));
      }
  for (int i = 0; i < kg.g.n; ++i)
    for (int j = i + 1; j < kg.g.n; ++j)
      if (hops_conflict(kg.kernels[i], kg.kernels[j], conv))
        kg.g.add_edge(i, j);
  if (level == ConflictLevel::Kernel) return kg;

  ConflictGraph pg;
  pg.level = ConflictLevel::Packet;
  for (const Packet &p : packets) pg.g.add_vertex(packet_label(p, conv.source));
  for (auto [a, b] : kg.g.edges) {
    int pa = kg.kernel_packet[a], pb = kg.kernel_packet[b];
    if (!pg.g.has_edge(pa, pb)) pg.g.add_edge(pa, pb);
  }
  return pg;
}

std::vector<Occupancy> occupancy(const std::vector<Packet> &roots,
                                 const Circuit &c) {
  std::vector<Occupancy> out(roots.size());
  std::map<std::pair<int, int>, std::vector<int>> singles;  // (side, t) -> roots
  for (size_t r = 0; r < roots.size(); ++r) {
    const Packet &p = roots[r];
    Occupancy &o = out[r];
    o.root = static_cast<int>(r);
    o.aux_side = opposite(c.side(p.q));
    if (p.T.size() > 1) {
      o.lo = 3.0 * p.min_t() + 2.0;
      o.hi = 3.0 * p.max_t();
    } else {
      singles[{static_cast<int>(o.aux_side), p.min_t()}].push_back(static_cast<int>(r));
    }
  }
  for (const auto &[key, members] : singles) {
    const double step = 1.0 / (members.size() + 1);
    for (size_t k = 0; k < members.size(); ++k) {
      Occupancy &o = out[members[k]];
      o.lo = 3.0 * key.second + 0.5 + k * step;
      o.hi = o.lo + step / 2;
    }
  }
  return out;
}

bool overlaps(const Occupancy &a, const Occupancy &b) {
  return a.aux_side == b.aux_side && a.lo < b.hi && b.lo < a.hi;
}

int chromatic_number(const std::vector<Occupancy> &occ, Side aux_side) {
  std::vector<std::pair<double, int>> events;
  for (const auto &o : occ) {
    if (o.aux_side != aux_side) continue;
    events.emplace_back(o.lo, +1);
    events.emplace_back(o.hi, -1);
  }
  // Open intervals: at a shared coordinate the closing event goes first.
  std::sort(events.begin(), events.end());
  int cur = 0, best = 0;
  for (auto [x, d] : events) {
    cur += d;
    best = std::max(best, cur);
  }
  return best;
}

std::vector<int> first_fit_coloring(const std::vector<Occupancy> &occ,
                                    Side aux_side, int colors) {
  std::vector<int> color(occ.size(), -1);
  std::vector<int> order;
  for (size_t i = 0; i < occ.size(); ++i)
    if (occ[i].aux_side == aux_side) order.push_back(static_cast<int>(i));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (occ[a].lo != occ[b].lo) return occ[a].lo < occ[b].lo;
    return occ[a].hi < occ[b].hi;
  });
  std::vector<double> last_hi;
  for (int i : order) {
    int pick = -1;
    for (size_t c = 0; c < last_hi.size(); ++c)
      if (last_hi[c] <= occ[i].lo) {
        pick = static_cast<int>(c);
        break;
      }
    if (pick < 0 && static_cast<int>(last_hi.size()) < colors) {
      last_hi.push_back(occ[i].hi);
      pick = static_cast<int>(last_hi.size()) - 1;
    } else if (pick < 0) {
      pick = static_cast<int>(std::min_element(last_hi.begin(), last_hi.end()) -
                              last_hi.begin());
      last_hi[pick] = std::max(last_hi[pick], occ[i].hi);
    } else {
      last_hi[pick] = occ[i].hi;
    }
    color[i] = pick;
  }
  return color;
}

ConflictGraph build_extrinsic_conflicts(const std::vector<Packet> &roots,
                                        const Circuit &c, Side aux_side) {
  ConflictGraph cg;
  cg.level = ConflictLevel::Packet;
  auto occ = occupancy(roots, c);
  for (const Packet &p : roots) cg.g.add_vertex(packet_label(p, c));
  for (size_t i = 0; i < occ.size(); ++i) {
    if (occ[i].aux_side != aux_side) continue;
    for (size_t j = i + 1; j < occ.size(); ++j)
      if (overlaps(occ[i], occ[j]))
        cg.g.add_edge(static_cast<int>(i), static_cast<int>(j));
  }
  return cg;
}

std::string export_dot(const Graph &g, const std::string &name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < g.n; ++v)
    os << "  v" << v << " [label=\"" << g.labels[v] << "\"];\n";
  for (size_t e = 0; e < g.edges.size(); ++e) {
    os << "  v" << g.edges[e].first << " -- v" << g.edges[e].second;
    if (!g.edge_labels[e].empty()) os << " [label=\"" << g.edge_labels[e] << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dqc
