#include "dqc/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace dqc {

const char *equivalence_name(Equivalence e) {
  switch (e) {
    case Equivalence::Canonical: return "Canonical";
    case Equivalence::UpToPhase: return "UpToPhase";
    case Equivalence::NotUnitary: return "NotUnitary";
  }
  return "?";
}

const char *verify_status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Pass: return "Pass";
    case VerifyStatus::BranchMismatch: return "BranchMismatch";
    case VerifyStatus::NonLocal: return "NonLocal";
    case VerifyStatus::InvalidPlan: return "InvalidPlan";
    case VerifyStatus::TooLarge: return "TooLarge";
  }
  return "?";
}

CMat cx_gate_on(int control, int target, int wires) {
  return embed_gate(gate_cnot(), {control, target}, wires);
}

CMat starting_isometry(int q, int n) {
  const int dim = 1 << n;
  CMat s = CMat::Zero(2 * dim, dim);
  for (int x = 0; x < dim; ++x) {
    int bit = (x >> (n - 1 - q)) & 1;
    s(2 * x + bit, x) = 1.0;
  }
  return s;
}

CMat primitive_kernel(const CMat &u, int q) {
  const int n = static_cast<int>(std::lround(std::log2(u.rows())));
  CMat c = cx_gate_on(q, n, n + 1);
  return c * kron(u, identity(2)) * c;
}

KrausPair kraus_of_process(const PackingProcess &proc) {
  const int n = proc.n, dim = 1 << n;
  if (proc.kernel.rows() != 2 * dim || proc.kernel.cols() != 2 * dim)
    throw DqcError(ErrorKind::DimensionMismatch, "kernel must span n + 1 wires");
  CMat c = cx_gate_on(proc.q, n, n + 1);
  CMat full = c * proc.kernel * c;
  KrausPair k{CMat(dim, dim), CMat(dim, dim)};
  for (int r = 0; r < dim; ++r)
    for (int col = 0; col < dim; ++col) {
      Complex a0 = full(2 * r, 2 * col), a1 = full(2 * r + 1, 2 * col);
      k.plus(r, col) = a0 + a1;
      k.minus(r, col) = a0 - a1;
    }
  CMat sum = 0.5 * (k.plus.adjoint() * k.plus + k.minus.adjoint() * k.minus);
  if (max_abs(sum - identity(dim)) > kTol)
    throw DqcError(ErrorKind::NonTracePreserving,
                   "Kraus pair does not sum to the identity");
  return k;
}

EquivalenceResult is_unitary_equivalent(const PackingProcess &proc) {
  KrausPair k = kraus_of_process(proc);
  EquivalenceResult res;
  if (max_abs(k.plus - k.minus) <= kTol) {
    res.kind = Equivalence::Canonical;
    res.unitary = k.plus;
    return res;
  }
  PhaseMatch m = equal_up_to_global_phase(k.plus, k.minus);
  if (m.equal) {
    res.kind = Equivalence::UpToPhase;
    res.phase = m.phase;
    res.unitary = k.plus;
  }
  return res;
}

std::vector<double> operator_schmidt(const CMat &m, const std::vector<bool> &in_first,
                                     CMat *left, CMat *right) {
  const int w = static_cast<int>(in_first.size());
  std::vector<int> first, second;
  for (int i = 0; i < w; ++i) (in_first[i] ? first : second).push_back(i);
  const int da = 1 << first.size(), db = 1 << second.size();
  auto split = [&](int idx, int &a, int &b) {
    a = b = 0;
    for (int i : first) a = (a << 1) | ((idx >> (w - 1 - i)) & 1);
    for (int i : second) b = (b << 1) | ((idx >> (w - 1 - i)) & 1);
  };
  CMat r(da * da, db * db);
  for (int row = 0; row < (1 << w); ++row)
    for (int col = 0; col < (1 << w); ++col) {
      int ar, br, ac, bc;
      split(row, ar, br);
      split(col, ac, bc);
      r(ar * da + ac, br * db + bc) = m(row, col);
    }
  Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  auto sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  if (left && right && !out.empty()) {
    const double s = std::sqrt(out[0]);
    CMat a(da, da), b(db, db);
    for (int i = 0; i < da * da; ++i) a(i / da, i % da) = s * svd.matrixU()(i, 0);
    for (int i = 0; i < db * db; ++i)
      b(i / db, i % db) = s * std::conj(svd.matrixV()(i, 0));
    *left = a;
    *right = b;
  }
  return out;
}

namespace {

// q-block of u: <i_q| u |j_q> over the remaining wires in order.
CMat q_block(const CMat &u, int q, int w, int i, int j) {
  const int rest = 1 << (w - 1);
  CMat b(rest, rest);
  auto expand = [&](int r, int bit) {
    int low = r & ((1 << (w - 1 - q)) - 1);
    int high = r >> (w - 1 - q);
    return (high << (w - q)) | (bit << (w - 1 - q)) | low;
  };
  for (int r = 0; r < rest; ++r)
    for (int c = 0; c < rest; ++c) b(r, c) = u(expand(r, i), expand(c, j));
  return b;
}

bool rank_one(const CMat &block, const std::vector<bool> &in_first) {
  if (in_first.empty()) return true;
  auto sv = operator_schmidt(block, in_first);
  if (sv.empty() || sv[0] <= kTol) return true;
  for (size_t k = 1; k < sv.size(); ++k)
    if (sv[k] > kTol * sv[0]) return false;
  return true;
}

std::vector<bool> rest_split(int q, const std::vector<Side> &sides) {
  std::vector<bool> in_first;
  for (size_t i = 0; i < sides.size(); ++i)
    if (static_cast<int>(i) != q) in_first.push_back(sides[i] == sides[q]);
  return in_first;
}

}  // namespace

bool matrix_distributable(const CMat &u, int q, const std::vector<Side> &sides) {
  const int w = static_cast<int>(sides.size());
  if (w > 10) throw DqcError(ErrorKind::TooLarge, "matrix_distributable over 10 wires");
  if (u.rows() != (1 << w))
    throw DqcError(ErrorKind::DimensionMismatch, "matrix size and side list disagree");
  CMat b[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b[i][j] = q_block(u, q, w, i, j);
  const bool diag = max_abs(b[0][1]) <= kTol && max_abs(b[1][0]) <= kTol;
  const bool anti = max_abs(b[0][0]) <= kTol && max_abs(b[1][1]) <= kTol;
  if (!diag && !anti) return false;
  auto split = rest_split(q, sides);
  if (diag) return rank_one(b[0][0], split) && rank_one(b[1][1], split);
  return rank_one(b[0][1], split) && rank_one(b[1][0], split);
}

CMat distributing_kernel(const CMat &u, int q, const std::vector<Side> &sides) {
  if (!matrix_distributable(u, q, sides))
    throw DqcError(ErrorKind::InvalidPlan, "gate is not distributable on this root");
  const int w = static_cast<int>(sides.size());
  const int wires = w + 1, e = w;
  auto split = rest_split(q, sides);
  std::vector<int> same, other;
  for (int i = 0; i < w; ++i)
    if (i != q) (sides[i] == sides[q] ? same : other).push_back(i);

  CMat b[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b[i][j] = q_block(u, q, w, i, j);
  const bool diag = max_abs(b[0][1]) <= kTol && max_abs(b[1][0]) <= kTol;

  // Column j of the q-pattern maps to row pi(j) with block V_j (x) W_j.
  CMat ka = CMat::Zero(1 << wires, 1 << wires), kb = ka;
  for (int j = 0; j < 2; ++j) {
    const int i = diag ? j : 1 - j;
    CMat v, wm;
    if (same.empty() && other.empty()) {
      v = b[i][j];
      wm = identity(1);
    } else {
      operator_schmidt(b[i][j], split, &v, &wm);
      const double scale = std::sqrt(double(v.rows())) / v.norm();
      v *= scale;
      wm /= scale;
    }
    // K_A: |i><j|_q (x) V_j on the root side; K_B: |i><j|_e (x) W_j.
    CMat pa = CMat::Zero(2, 2), pe = CMat::Zero(2, 2);
    pa(i, j) = 1.0;
    pe(i, j) = 1.0;
    std::vector<int> wa = {q}, wb = {e};
    wa.insert(wa.end(), same.begin(), same.end());
    wb.insert(wb.end(), other.begin(), other.end());
    CMat opa = kron(pa, v), opb = kron(pe, wm);
    // Embed the (possibly non-unitary) pieces wire by wire.
    auto place = [&](const CMat &op, const std::vector<int> &ws) {
      CMat full = CMat::Zero(1 << wires, 1 << wires);
      const int k = static_cast<int>(ws.size());
      for (int r = 0; r < (1 << wires); ++r)
        for (int c = 0; c < (1 << wires); ++c) {
          bool same_rest = true;
          int sr = 0, sc = 0;
          for (int bit = 0; bit < wires; ++bit) {
            const int rb = (r >> (wires - 1 - bit)) & 1, cb = (c >> (wires - 1 - bit)) & 1;
            auto it = std::find(ws.begin(), ws.end(), bit);
            if (it == ws.end()) {
              if (rb != cb) same_rest = false;
            } else {
              const int pos = static_cast<int>(it - ws.begin());
              sr |= rb << (k - 1 - pos);
              sc |= cb << (k - 1 - pos);
            }
          }
          if (same_rest) full(r, c) = op(sr, sc);
        }
      return full;
    };
    ka += place(opa, wa);
    kb += place(opb, wb);
  }
  // Kernel acts after C_{q,X_e}: the aux carries a copy of q.
  return ka * kb;
}

CMat u_equivalent_kernel(const CMat &u, const CMat &v, double phi) {
  const int n = static_cast<int>(std::lround(std::log2(u.rows())));
  const int rest = 1 << (n - 1);
  const int dim = 1 << (n + 1);
  if (v.rows() != 2 * rest)
    throw DqcError(ErrorKind::DimensionMismatch, "middle block must be 2^n square");
  auto index = [&](int qb, int r, int eb) { return (qb * rest + r) * 2 + eb; };
  CMat kt = CMat::Zero(dim, dim);
  for (int r = 0; r < rest; ++r)
    for (int c = 0; c < rest; ++c) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          kt(index(i, r, i), index(j, c, j)) = u(i * rest + r, j * rest + c);
      // middle block rows/cols ordered (01, 10)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          kt(index(i, r, 1 - i), index(j, c, 1 - j)) = v(i * rest + r, j * rest + c);
    }
  CMat rx = CMat::Zero(2, 2);
  const Complex p = std::polar(1.0, phi);
  rx(0, 0) = rx(1, 1) = (1.0 + p) / 2.0;
  rx(0, 1) = rx(1, 0) = (1.0 - p) / 2.0;
  return embed_gate(rx.adjoint(), {n}, n + 1) * kt;
}

// ---------------------------------------------------------------------------
// Plan execution.

namespace {

enum class OpKind { Gate, Start, End };

struct Op {
  OpKind kind = OpKind::Gate;
  CMat gate;
  std::vector<int> wires;  // resolved physical wire indices
  int aux_wire = -1;       // Start: index of the new wire; End: wire to drop
};

struct Compiled {
  std::vector<Op> ops;
  int peak = 0;
  std::string error;
  VerifyStatus status = VerifyStatus::Pass;
};

class Compiler {
 public:
  Compiler(const ConvertedCircuit &conv, const std::vector<Packet> &roots,
           const VerifyOptions &opt)
      : conv_(conv), roots_(roots), opt_(opt), n_(conv.num_qubits()) {
    for (int q = 0; q < n_; ++q) wire_of_.push_back(q);
    aux_of_.assign(roots.size(), -1);
    width_ = n_;
    out_.peak = n_;
  }

  Compiled run() {
    if (!validate()) return out_;
    std::vector<int> order(conv_.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return conv_.nodes[a].t < conv_.nodes[b].t;
    });
    std::vector<int> next_word(n_, 0);
    for (int id : order) {
      const CpNode &node = conv_.nodes[id];
      for (int q : {node.q1, node.q2})
        gate(conv_.lines[q].words[next_word[q]++].m, {q});
      if (!step(node)) return out_;
    }
    for (int q = 0; q < n_; ++q) gate(conv_.lines[q].words[next_word[q]].m, {q});
    for (size_t r = 0; r < roots_.size(); ++r)
      if (aux_of_[r] >= 0) return fail(VerifyStatus::InvalidPlan, "root left open");
    return out_;
  }

 private:
  Compiled fail(VerifyStatus s, const std::string &msg) {
    if (out_.status == VerifyStatus::Pass) {
      out_.status = s;
      out_.error = msg;
    }
    return out_;
  }

  bool validate() {
    for (const Packet &r : roots_) {
      if (r.q < 0 || r.q >= n_ || r.T.empty()) {
        fail(VerifyStatus::InvalidPlan, "root without qubit or depths");
        return false;
      }
      for (size_t i = 0; i < r.T.size(); ++i) {
        const CpNode *node = conv_.node_at(r.q, r.T[i]);
        if (!node || !node->global || (i && r.T[i] <= r.T[i - 1])) {
          fail(VerifyStatus::InvalidPlan,
               "root on " + conv_.source.name(r.q) + " lists depth " +
                   std::to_string(r.T[i]) + " without a global node");
          return false;
        }
      }
    }
    return true;
  }

  // Wire ids: >= 0 circuit qubit, < 0 aux of root (-id - 1).
  int phys(int w) const { return w >= 0 ? wire_of_[w] : aux_of_[-w - 1]; }
  Side side_of(int w) const {
    return w >= 0 ? conv_.source.side(w) : opposite(conv_.source.side(roots_[-w - 1].q));
  }

  void gate(const CMat &m, const std::vector<int> &logical, bool exempt = false) {
    if (max_abs(m - identity(static_cast<int>(m.rows()))) <= 1e-15) return;
    if (!exempt)
      for (int w : logical)
        if (side_of(w) != side_of(logical[0])) {
          fail(VerifyStatus::NonLocal, "kernel operation spans both sides");
          break;
        }
    Op op;
    op.gate = m;
    for (int w : logical) op.wires.push_back(phys(w));
    out_.ops.push_back(op);
  }

  void start(int r) {
    Op op;
    op.kind = OpKind::Start;
    op.aux_wire = width_;
    aux_of_[r] = width_++;
    out_.peak = std::max(out_.peak, width_);
    out_.ops.push_back(op);
    gate(gate_cnot(), {roots_[r].q, -r - 1}, true);
  }

  void end(int r) {
    gate(gate_cnot(), {roots_[r].q, -r - 1}, true);
    Op op;
    op.kind = OpKind::End;
    op.aux_wire = aux_of_[r];
    out_.ops.push_back(op);
    for (auto &a : aux_of_)
      if (a > op.aux_wire) --a;
    aux_of_[r] = -1;
    --width_;
  }

  const KernelRef *extended_at(int q, int t, int *root) const {
    for (size_t r = 0; r < roots_.size(); ++r)
      if (roots_[r].q == q)
        for (const KernelRef &k : roots_[r].kernels)
          if (k.kind == KernelKind::Extended && k.gap == t) {
            *root = static_cast<int>(r);
            return &k;
          }
    return nullptr;
  }

  bool step(const CpNode &node) {
    const int t = node.t;
    const int qs[2] = {node.q1, node.q2};
    for (int q : qs)
      for (size_t r = 0; r < roots_.size(); ++r) {
        if (roots_[r].q != q) continue;
        for (const KernelRef &k : roots_[r].kernels)
          if (k.is_embedding() && k.t2 == t && k.parity % 2 && aux_of_[r] >= 0)
            gate(gate_x(), {-static_cast<int>(r) - 1});
      }
    for (int q : qs)
      for (size_t r = 0; r < roots_.size(); ++r)
        if (roots_[r].q == q && roots_[r].min_t() == t && aux_of_[r] < 0) {
          if (width_ + 1 > opt_.max_wires) {
            fail(VerifyStatus::TooLarge,
                 "more than " + std::to_string(opt_.max_wires) + " wires");
            return false;
          }
          start(static_cast<int>(r));
        }

    if (!node.global) {
      gate(gate_cp(node.theta), {node.q1, node.q2});
    } else {
      int ext_root = -1;
      const KernelRef *ext = nullptr;
      for (int q : qs)
        if (!ext) ext = extended_at(q, t, &ext_root);
      if (ext) {
        int host = -1;
        for (size_t r = 0; r < roots_.size(); ++r)
          if (roots_[r].q == ext->q && roots_[r].T.size() == 1 && roots_[r].T[0] == t &&
              roots_[r].extended_host)
            host = static_cast<int>(r);
        if (host < 0 || aux_of_[host] < 0 || aux_of_[ext_root] < 0) {
          fail(VerifyStatus::InvalidPlan, "extended embedding without an open host");
          return false;
        }
        const int eh = -host - 1, er = -ext_root - 1, partner = node.partner(ext->q);
        gate(gate_cz(), {eh, er});
        gate(gate_h(), {er});
        gate(gate_cp(node.theta), {er, partner});
        gate(gate_h(), {er});
        gate(gate_cz(), {eh, er});
      } else {
        int dist = -1;
        for (size_t r = 0; r < roots_.size() && dist < 0; ++r)
          if ((roots_[r].q == node.q1 || roots_[r].q == node.q2) && roots_[r].contains(t))
            dist = static_cast<int>(r);
        if (dist >= 0) {
          gate(gate_cp(node.theta), {-dist - 1, node.partner(roots_[dist].q)});
        } else if (opt_.direct_uncovered) {
          gate(gate_cp(node.theta), {node.q1, node.q2}, true);
        } else {
          fail(VerifyStatus::InvalidPlan,
               "global node at depth " + std::to_string(t) + " has no distributing root");
          return false;
        }
      }
      for (int q : qs)
        for (size_t r = 0; r < roots_.size(); ++r) {
          if (roots_[r].q != q || aux_of_[r] < 0) continue;
          for (const KernelRef &k : roots_[r].kernels)
            if (k.kind == KernelKind::Hop &&
                std::find(k.units.begin(), k.units.end(), t) != k.units.end())
              gate(gate_cnot(), {node.partner(q), -static_cast<int>(r) - 1});
        }
    }

    for (int q : qs)
      for (size_t r = 0; r < roots_.size(); ++r)
        if (roots_[r].q == q && roots_[r].max_t() == t && aux_of_[r] >= 0)
          end(static_cast<int>(r));
    return out_.status == VerifyStatus::Pass || out_.status == VerifyStatus::NonLocal;
  }

  const ConvertedCircuit &conv_;
  const std::vector<Packet> &roots_;
  const VerifyOptions &opt_;
  int n_;
  int width_ = 0;
  std::vector<int> wire_of_;
  std::vector<int> aux_of_;
  Compiled out_;
};

CMat add_aux(const CMat &state) {
  CMat out = CMat::Zero(2 * state.rows(), state.cols());
  for (Eigen::Index r = 0; r < state.rows(); ++r) out.row(2 * r) = state.row(r);
  return out;
}

// sqrt(2) <+/-| on `wire` of a width-w state.
CMat project(const CMat &state, int wire, int width, int sign) {
  const int shift = width - 1 - wire;
  const Eigen::Index rows = state.rows() / 2;
  CMat out(rows, state.cols());
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index high = r >> shift, low = r & ((Eigen::Index(1) << shift) - 1);
    const Eigen::Index i0 = (high << (shift + 1)) | low, i1 = i0 | (Eigen::Index(1) << shift);
    out.row(r) = state.row(i0) + double(sign) * state.row(i1);
  }
  return out;
}

}  // namespace

VerificationReport verify_roots(const ConvertedCircuit &conv,
                                const std::vector<Packet> &roots,
                                const VerifyOptions &opt) {
  VerificationReport rep;
  const int n = conv.num_qubits();
  if (n > opt.max_wires) {
    rep.status = VerifyStatus::TooLarge;
    rep.detail = "circuit wider than the dense limit";
    return rep;
  }
  Compiler comp(conv, roots, opt);
  Compiled prog = comp.run();
  rep.peak_wires = prog.peak;
  if (prog.status != VerifyStatus::Pass) {
    rep.status = prog.status;
    rep.detail = prog.error;
    return rep;
  }
  const CMat target = full_unitary(conv.source);

  bool have_phase = false;
  double ref_phase = 0.0;
  bool capped = false;
  std::function<void(CMat, size_t, int, double)> dfs = [&](CMat state, size_t pc,
                                                           int width, double weight) {
    if (capped) return;
    for (; pc < prog.ops.size(); ++pc) {
      const Op &op = prog.ops[pc];
      if (op.kind == OpKind::Gate) {
        apply_gate(state, op.gate, op.wires, width);
      } else if (op.kind == OpKind::Start) {
        state = add_aux(state);
        ++width;
      } else {
        CMat plus = project(state, op.aux_wire, width, +1);
        CMat minus = project(state, op.aux_wire, width, -1);
        --width;
        if (max_abs(plus - minus) <= 1e-10) {
          state = std::move(plus);
          weight *= 2;
          continue;
        }
        dfs(std::move(plus), pc + 1, width, weight);
        dfs(std::move(minus), pc + 1, width, weight);
        return;
      }
    }
    if (++rep.leaves > opt.leaf_cap) {
      capped = true;
      return;
    }
    rep.branches += weight;
    if (!have_phase) {
      PhaseMatch m = equal_up_to_global_phase(state, target, opt.tol);
      ref_phase = m.phase;
      rep.phase = snap_phase(m.phase);
      have_phase = true;
    }
    double dev = max_abs(state - std::polar(1.0, ref_phase) * target);
    rep.max_deviation = std::max(rep.max_deviation, dev);
  };
  dfs(identity(1 << n), 0, n, 1.0);
  if (capped) {
    rep.status = VerifyStatus::TooLarge;
    rep.detail = "branch count exceeds the leaf cap";
  } else if (rep.max_deviation > opt.tol) {
    rep.status = VerifyStatus::BranchMismatch;
    rep.detail = "a branch deviates from the circuit unitary";
  }
  return rep;
}

VerificationReport verify_plan(const ConvertedCircuit &conv, const PackingPlan &plan,
                               const VerifyOptions &opt) {
  return verify_roots(conv, plan.roots, opt);
}

VerificationReport verify_plan(const Circuit &c, const PackingPlan &plan,
                               const VerifyOptions &opt) {
  return verify_roots(to_control_phase_form(c), plan.roots, opt);
}

}  // namespace dqc
