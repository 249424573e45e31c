#include "dqc/packets.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dqc {

const char *kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::Distribute: return "distribute";
    case KernelKind::Neighbour: return "neighbour";
    case KernelKind::Hop: return "hop";
    case KernelKind::Extended: return "extended";
  }
  return "?";
}

bool Packet::contains(int t) const {
  return std::binary_search(T.begin(), T.end(), t);
}

std::vector<KernelRef> Packet::embeddings() const {
  std::vector<KernelRef> out;
  for (const auto &k : kernels)
    if (k.is_embedding()) out.push_back(k);
  return out;
}

std::vector<KernelRef> interleave_kernels(int q, const std::vector<int> &T,
                                          const std::vector<KernelRef> &embeds) {
  std::vector<KernelRef> out;
  for (size_t i = 0; i < T.size(); ++i) {
    KernelRef d;
    d.kind = KernelKind::Distribute;
    d.q = q;
    d.t1 = d.t2 = T[i];
    out.push_back(d);
    if (i + 1 < T.size()) {
      for (const auto &e : embeds)
        if (e.t1 == T[i] && e.t2 == T[i + 1]) {
          out.push_back(e);
          break;
        }
    }
  }
  return out;
}

std::vector<Packet> identify_trivial_packets(const ConvertedCircuit &conv) {
  std::vector<Packet> out;
  for (int q = 0; q < conv.num_qubits(); ++q) {
    for (int id : conv.lines[q].nodes) {
      const CpNode &n = conv.node(id);
      if (!n.global) continue;
      Packet p;
      p.q = q;
      p.T = {n.t};
      p.kernels = interleave_kernels(q, p.T, {});
      out.push_back(p);
    }
  }
  return out;
}

std::vector<KernelRef> neighbouring(int q, const ConvertedCircuit &conv) {
  const QubitLine &line = conv.lines.at(q);
  std::vector<int> globals;
  for (size_t k = 0; k < line.nodes.size(); ++k)
    if (conv.node(line.nodes[k]).global) globals.push_back(static_cast<int>(k));
  std::vector<KernelRef> out;
  for (size_t g = 0; g + 1 < globals.size(); ++g) {
    const int a = globals[g], b = globals[g + 1];
    bool ok = true;
    int parity = 0;
    for (int w = a + 1; w <= b && ok; ++w) {
      ok = line.words[w].cls.is_d();
      parity ^= line.words[w].cls.antidiag();
    }
    if (!ok) continue;
    KernelRef k;
    k.kind = KernelKind::Neighbour;
    k.q = q;
    k.t1 = conv.node(line.nodes[a]).t;
    k.t2 = conv.node(line.nodes[b]).t;
    k.parity = parity;
    out.push_back(k);
  }
  return out;
}

namespace {

// Returns n mod 2 when phi is n*pi within tolerance, otherwise -1.
int pi_multiple_parity(double phi) {
  double r = reduce_phase(phi);
  double n = std::round(r / kPi);
  if (std::abs(r - n * kPi) > kTol) return -1;
  return static_cast<int>(n) % 2;
}

struct Option {
  double alpha, gamma;
};

std::vector<Option> interior_options(const SingleQubitClass &c) {
  switch (c.tag) {
    case SqTag::OneHadamard:
      return {{c.alpha + kPi / 2, c.gamma + kPi / 2}};
    case SqTag::TwoHadamard:
      return {{c.alpha, c.gamma}};
    case SqTag::Diagonal:
      return {{c.alpha, 0.0}, {0.0, c.alpha}};
    case SqTag::AntiDiagonal:
      return {{c.alpha, 0.0}, {0.0, -c.alpha}};
  }
  return {};
}

}  // namespace

bool hop_phase_condition(const QubitLine &line, int i, int j, int *parity) {
  if (j < i + 2) return false;
  const SingleQubitClass &first = line.words[i + 1].cls;
  const SingleQubitClass &last = line.words[j].cls;
  if (first.tag != SqTag::OneHadamard || last.tag != SqTag::OneHadamard)
    return false;

  // reach[o] = parities achievable with the current word using option o.
  struct State {
    double gamma;
    bool par[2];
  };
  std::vector<State> cur = {{first.gamma, {true, false}}};
  for (int w = i + 2; w <= j; ++w) {
    std::vector<Option> opts =
        w == j ? std::vector<Option>{{last.alpha, 0.0}}
               : interior_options(line.words[w].cls);
    std::vector<State> next;
    for (const Option &o : opts) {
      State s{o.gamma, {false, false}};
      for (const State &prev : cur) {
        int n = pi_multiple_parity(prev.gamma + o.alpha);
        if (n < 0) continue;
        for (int p = 0; p < 2; ++p)
          if (prev.par[p]) s.par[p ^ n] = true;
      }
      if (s.par[0] || s.par[1]) next.push_back(s);
    }
    if (next.empty()) return false;
    cur = std::move(next);
  }
  bool even = false, odd = false;
  for (const State &s : cur) {
    even |= s.par[0];
    odd |= s.par[1];
  }
  if (parity) *parity = even ? 0 : 1;
  return even || odd;
}

std::vector<KernelRef> hopping(int q, const ConvertedCircuit &conv,
                               const IdentifyOptions &opt) {
  const QubitLine &line = conv.lines.at(q);
  const int m = static_cast<int>(line.nodes.size());
  const int span_cap = m <= opt.window_threshold ? m : opt.window;
  auto node = [&](int k) -> const CpNode & { return conv.node(line.nodes[k]); };

  // ok[i][j] >= 0 holds the parity of an admissible hop from node i to j.
  std::vector<std::vector<int>> ok(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i) {
    if (!node(i).global) continue;
    for (int j = i + 2; j < m && j - i <= span_cap; ++j) {
      const CpNode &unit = node(j - 1);
      if (!unit.global || !unit.is_pi()) break;
      if (!node(j).global) continue;
      int parity = 0;
      if (hop_phase_condition(line, i, j, &parity)) ok[i][j] = parity;
    }
  }
  std::vector<KernelRef> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 2; j < m; ++j) {
      if (ok[i][j] < 0) continue;
      bool decomposable = false;
      for (int k = i + 1; k < j && !decomposable; ++k)
        decomposable = ok[i][k] >= 0 && ok[k][j] >= 0;
      if (decomposable) continue;
      KernelRef h;
      h.kind = KernelKind::Hop;
      h.q = q;
      h.t1 = node(i).t;
      h.t2 = node(j).t;
      for (int k = i + 1; k < j; ++k) h.units.push_back(node(k).t);
      h.parity = ok[i][j];
      out.push_back(h);
    }
  }
  return out;
}

int PacketSet::packet_of(int q, int t) const {
  for (size_t i = 0; i < packets.size(); ++i)
    if (packets[i].q == q && packets[i].contains(t)) return static_cast<int>(i);
  return -1;
}

PacketSet build_packets(const ConvertedCircuit &conv, const IdentifyOptions &opt) {
  PacketSet set;
  for (int q = 0; q < conv.num_qubits(); ++q) {
    std::vector<KernelRef> nb, hp;
    if (opt.neighbouring) nb = neighbouring(q, conv);
    if (opt.hopping) hp = hopping(q, conv, opt);
    std::stable_sort(hp.begin(), hp.end(), [](const KernelRef &a, const KernelRef &b) {
      if (a.t2 - a.t1 != b.t2 - b.t1) return a.t2 - a.t1 < b.t2 - b.t1;
      return a.t1 < b.t1;
    });
    set.neighbour_rules.insert(set.neighbour_rules.end(), nb.begin(), nb.end());
    set.hop_rules.insert(set.hop_rules.end(), hp.begin(), hp.end());

    std::map<int, KernelRef> out_edge;
    std::map<int, int> in_edge;
    auto accept = [&](const KernelRef &e) {
      if (out_edge.count(e.t1) || in_edge.count(e.t2)) return;
      out_edge[e.t1] = e;
      in_edge[e.t2] = e.t1;
    };
    for (const auto &e : nb) accept(e);
    for (const auto &e : hp) accept(e);

    for (int id : conv.lines[q].nodes) {
      const CpNode &n = conv.node(id);
      if (!n.global || in_edge.count(n.t)) continue;
      Packet p;
      p.q = q;
      std::vector<KernelRef> embeds;
      int t = n.t;
      p.T.push_back(t);
      while (out_edge.count(t)) {
        embeds.push_back(out_edge[t]);
        t = out_edge[t].t2;
        p.T.push_back(t);
      }
      p.kernels = interleave_kernels(q, p.T, embeds);
      set.packets.push_back(p);
    }
  }
  return set;
}

}  // namespace dqc
