#include "dqc/conversion.hpp"

#include <algorithm>

namespace dqc {

int QubitLine::index_at(int t, const std::vector<CpNode> &all) const {
  for (size_t k = 0; k < nodes.size(); ++k)
    if (all[nodes[k]].t == t) return static_cast<int>(k);
  return -1;
}

const CpNode *ConvertedCircuit::node_at(int q, int t) const {
  int k = lines.at(q).index_at(t, nodes);
  return k < 0 ? nullptr : &nodes[lines[q].nodes[k]];
}

int ConvertedCircuit::count_global() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(),
                                        [](const CpNode &n) { return n.global; }));
}

namespace {

struct Builder {
  ConvertedCircuit &out;
  std::vector<CMat> acc;
  std::vector<int> last_t;

  explicit Builder(ConvertedCircuit &o) : out(o) {
    const int n = o.num_qubits();
    acc.assign(n, identity(2));
    last_t.assign(n, -1);
    out.lines.assign(n, QubitLine{});
  }

  void close_word(int q, int t_to) {
    Word w;
    w.m = acc[q];
    w.cls = classify_single_qubit(w.m);
    w.t_from = last_t[q];
    w.t_to = t_to;
    w.boundary = last_t[q] < 0 || t_to < 0;
    out.lines[q].words.push_back(w);
    acc[q] = identity(2);
    last_t[q] = t_to;
  }

  void add_node(int q1, int q2, int t, double theta, int cu_target) {
    close_word(q1, t);
    close_word(q2, t);
    CpNode n;
    n.id = static_cast<int>(out.nodes.size());
    n.q1 = q1;
    n.q2 = q2;
    n.t = t;
    n.theta = theta;
    n.global = out.source.side(q1) != out.source.side(q2);
    n.cu_target = cu_target;
    out.nodes.push_back(n);
    out.lines[q1].nodes.push_back(n.id);
    out.lines[q2].nodes.push_back(n.id);
  }
};

}  // namespace

ConvertedCircuit to_control_phase_form(const Circuit &c) {
  ConvertedCircuit out;
  out.source = c;
  Builder b(out);
  for (int t = 0; t < c.depth(); ++t) {
    for (const Gate &g : c.column(t)) {
      switch (g.kind) {
        case GateKind::Single:
          b.acc[g.qubits[0]] = g.matrix * b.acc[g.qubits[0]];
          break;
        case GateKind::ControlPhase: {
          double theta = snap_phase(g.theta);
          if (theta != 0.0) b.add_node(g.qubits[0], g.qubits[1], t, theta, -1);
          break;
        }
        case GateKind::Controlled: {
          const int ctl = g.qubits[0], tgt = g.qubits[1];
          Diagonalization d = diagonalize_2x2_unitary(g.u0.adjoint() * g.u1);
          double delta = snap_phase(d.theta1 - d.theta0);
          if (delta == 0.0) {
            b.acc[ctl] = gate_v(d.theta0) * b.acc[ctl];
            b.acc[tgt] = g.u0 * b.acc[tgt];
            break;
          }
          b.acc[tgt] = d.w.adjoint() * b.acc[tgt];
          b.add_node(ctl, tgt, t, delta, tgt);
          b.acc[ctl] = gate_v(d.theta0);
          b.acc[tgt] = g.u0 * d.w;
          break;
        }
      }
    }
  }
  for (int q = 0; q < c.num_qubits(); ++q) b.close_word(q, -1);
  return out;
}

std::vector<Word> collect_inter_node_words(const ConvertedCircuit &conv, int q) {
  return conv.lines.at(q).words;
}

namespace {

// Visits nodes in depth order, handing each its preceding words first.
template <typename WordFn, typename NodeFn>
void walk(const ConvertedCircuit &conv, WordFn on_word, NodeFn on_node) {
  std::vector<int> order(conv.nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return conv.nodes[a].t < conv.nodes[b].t;
  });
  std::vector<int> next(conv.num_qubits(), 0);
  for (int id : order) {
    const CpNode &n = conv.nodes[id];
    for (int q : {n.q1, n.q2}) on_word(q, conv.lines[q].words[next[q]++]);
    on_node(n);
  }
  for (int q = 0; q < conv.num_qubits(); ++q)
    on_word(q, conv.lines[q].words[next[q]]);
}

}  // namespace

CMat converted_unitary(const ConvertedCircuit &conv) {
  const int n = conv.num_qubits();
  if (n > 12)
    throw DqcError(ErrorKind::TooLarge, "converted circuit exceeds 12 qubits");
  CMat u = identity(1 << n);
  walk(
      conv, [&](int q, const Word &w) { apply_gate(u, w.m, {q}, n); },
      [&](const CpNode &node) {
        apply_gate(u, gate_cp(node.theta), {node.q1, node.q2}, n);
      });
  return u;
}

Circuit ConvertedCircuit::as_circuit() const {
  Circuit c(source.names(), source.sides());
  auto is_identity = [](const CMat &m) { return max_abs(m - identity(2)) <= kTol; };
  walk(
      *this,
      [&](int q, const Word &w) {
        if (!is_identity(w.m)) c.append(Gate::single(q, w.m));
      },
      [&](const CpNode &node) { c.append(Gate::cp(node.q1, node.q2, node.theta)); });
  return c;
}

}  // namespace dqc
