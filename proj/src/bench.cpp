#include "dqc/bench.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dqc {

namespace {

std::vector<Side> resolve_sides(int n, PartitionRule rule, const std::vector<Side> &given) {
  if (n < 2) throw DqcError(ErrorKind::InvalidPartition, "need at least 2 qubits");
  if (rule == PartitionRule::Explicit) {
    if (static_cast<int>(given.size()) != n)
      throw DqcError(ErrorKind::InvalidPartition, "explicit partition size mismatch");
    return given;
  }
  std::vector<Side> s(n, Side::B);
  for (int q = 0; q < n / 2; ++q) s[q] = Side::A;
  return s;
}

std::vector<std::string> qubit_names(int n) {
  std::vector<std::string> names;
  for (int q = 0; q < n; ++q) names.push_back("q" + std::to_string(q));
  return names;
}

CMat gate_sdg() { return gate_v(-kPi / 2); }
CMat gate_s() { return gate_v(kPi / 2); }

// exp(-i theta/2 P) for a Pauli string given as one char per qubit.
// The ladder alternates sides so every CNOT that can be global is.
void pauli_exponential(Circuit &c, const std::string &paulis, double theta) {
  std::vector<int> on_a, on_b, support;
  for (int q = 0; q < static_cast<int>(paulis.size()); ++q)
    if (paulis[q] != 'I') (c.side(q) == Side::A ? on_a : on_b).push_back(q);
  for (size_t k = 0; k < std::max(on_a.size(), on_b.size()); ++k) {
    if (k < on_a.size()) support.push_back(on_a[k]);
    if (k < on_b.size()) support.push_back(on_b[k]);
  }
  if (support.empty()) return;
  for (int q : support) {
    if (paulis[q] == 'X') c.append(Gate::single(q, gate_h()));
    if (paulis[q] == 'Y') c.append(Gate::single(q, gate_h() * gate_sdg()));
  }
  for (size_t k = 0; k + 1 < support.size(); ++k)
    c.append(Gate::cnot(support[k], support[k + 1]));
  c.append(Gate::single(support.back(), gate_rz(theta)));
  for (size_t k = support.size() - 1; k-- > 0;)
    c.append(Gate::cnot(support[k], support[k + 1]));
  for (int q : support) {
    if (paulis[q] == 'X') c.append(Gate::single(q, gate_h()));
    if (paulis[q] == 'Y') c.append(Gate::single(q, gate_s() * gate_h()));
  }
}

}  // namespace

UccSpec UccSpec::all(int n, uint64_t seed) {
  UccSpec s;
  s.n_qubits = n;
  s.seed = seed;
  for (int i = 0; i < n; ++i)
    for (int a = i + 1; a < n; ++a) s.singles.push_back({i, a});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int a = j + 1; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          s.doubles.push_back({i, j, a, b});
          s.doubles.push_back({i, a, j, b});
          s.doubles.push_back({i, b, j, a});
        }
  return s;
}

Circuit gen_ucc_like(const UccSpec &spec) {
  const int n = spec.n_qubits;
  Circuit c(qubit_names(n), resolve_sides(n, spec.rule, spec.sides));
  Rng rng(spec.seed);
  auto jw = [&](std::string &p, int lo, int hi) {
    for (int q = lo + 1; q < hi; ++q) p[q] = p[q] == 'I' ? 'Z' : p[q];
  };
  for (const auto &s : spec.singles) {
    const double theta = rng.uniform(-kPi, kPi);
    std::string p(n, 'I');
    const int lo = std::min(s[0], s[1]), hi = std::max(s[0], s[1]);
    jw(p, lo, hi);
    p[s[0]] = 'X';
    p[s[1]] = 'Y';
    pauli_exponential(c, p, theta);
  }
  static const char *odd_y[8] = {"XXXY", "XXYX", "XYXX", "YXXX",
                                 "YYYX", "YYXY", "YXYY", "XYYY"};
  for (const auto &d : spec.doubles) {
    const double theta = rng.uniform(-kPi, kPi);
    std::array<int, 4> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    for (const char *pattern : odd_y) {
      std::string p(n, 'I');
      jw(p, sorted[0], sorted[1]);
      jw(p, sorted[2], sorted[3]);
      for (int k = 0; k < 4; ++k) p[d[k]] = pattern[k];
      pauli_exponential(c, p, theta / 8);
    }
  }
  return c;
}

CMat random_unitary_2x2(Rng &rng) {
  const double a = rng.uniform(0, kTwoPi), b = rng.uniform(0, kTwoPi);
  const double g = rng.uniform(0, kTwoPi);
  return gate_v(g) * gate_h() * gate_v(b) * gate_h() * gate_v(a);
}

CMat random_unitary(Rng &rng, int wires) {
  const int dim = 1 << wires;
  CMat m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      // Box-Muller from two uniforms keeps the stream portable.
      double u1 = std::max(rng.uniform(), 1e-300), u2 = rng.uniform();
      double rad = std::sqrt(-2.0 * std::log(u1));
      m(r, c) = Complex(rad * std::cos(kTwoPi * u2), rad * std::sin(kTwoPi * u2));
    }
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ();
  CMat rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    Complex d = rr(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Circuit gen_random(const RandomSpec &spec) {
  const int n = spec.n_qubits;
  Circuit c(qubit_names(n), resolve_sides(n, spec.rule, spec.sides));
  Rng rng(spec.seed);
  for (int t = 0; t < spec.depth; ++t) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
    for (int i = 0; i < n;) {
      if (i + 1 < n && rng.chance(spec.p_two_qubit)) {
        const int a = order[i], b = order[i + 1];
        const bool force_pi = rng.chance(0.3);
        if (rng.chance(0.5)) {
          c.place(t, Gate::cp(a, b, force_pi ? kPi : rng.uniform(0, kTwoPi)));
        } else if (force_pi) {
          c.place(t, Gate::cnot(a, b));
        } else {
          c.place(t, Gate::cu(a, b, random_unitary_2x2(rng), random_unitary_2x2(rng)));
        }
        i += 2;
        continue;
      }
      const int q = order[i++];
      const double kind = rng.uniform();
      CMat m;
      if (kind < 0.4)
        m = gate_v(rng.uniform(0, kTwoPi));
      else if (kind < 0.6)
        m = gate_v(rng.uniform(0, kTwoPi)) * gate_h() * gate_v(rng.uniform(0, kTwoPi));
      else
        m = random_unitary_2x2(rng);
      c.place(t, Gate::single(q, m));
    }
  }
  return c;
}

}  // namespace dqc
