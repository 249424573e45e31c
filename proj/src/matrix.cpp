#include "dqc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dqc {

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::WireOutOfRange: return "WireOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonUnitaryGate: return "NonUnitaryGate";
    case ErrorKind::OverlappingGates: return "OverlappingGates";
    case ErrorKind::UnknownQubit: return "UnknownQubit";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::UnsupportedGate: return "UnsupportedGate";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UncoveredNode: return "UncoveredNode";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::InfeasibleLimits: return "InfeasibleLimits";
    case ErrorKind::NonTracePreserving: return "NonTracePreserving";
    case ErrorKind::InvalidPlan: return "InvalidPlan";
  }
  return "Unknown";
}

double reduce_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double snap_phase(double phi) {
  double r = reduce_phase(phi);
  const double quarter = kPi / 2;
  double k = std::round(r / quarter);
  if (std::abs(r - k * quarter) <= kTol) {
    r = k * quarter;
    if (k >= 4) r = 0.0;
  }
  return r;
}

bool phase_is_multiple_of_pi(double phi) {
  double r = reduce_phase(phi);
  double k = std::round(r / kPi);
  return std::abs(r - k * kPi) <= kTol;
}

CMat identity(int dim) { return CMat::Identity(dim, dim); }

CMat gate_h() {
  CMat m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

CMat gate_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat gate_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMat gate_v(double theta) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = std::polar(1.0, theta);
  return m;
}

CMat gate_rz(double theta) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

CMat gate_cz() { return gate_cp(kPi); }

CMat gate_cnot() { return controlled(identity(2), gate_x()); }

CMat gate_cp(double theta) { return controlled(identity(2), gate_v(theta)); }

CMat gate_swap() {
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

CMat controlled(const CMat &u0, const CMat &u1) {
  CMat m = CMat::Zero(4, 4);
  m.block(0, 0, 2, 2) = u0;
  m.block(2, 2, 2, 2) = u1;
  return m;
}

double max_abs(const CMat &m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_unitary(const CMat &m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  return max_abs(m.adjoint() * m - identity(static_cast<int>(m.rows()))) <= tol;
}

void require_unitary(const CMat &m, const char *what) {
  if (!is_unitary(m)) throw DqcError(ErrorKind::NonUnitary, what);
}

PhaseMatch equal_up_to_global_phase(const CMat &a, const CMat &b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DqcError(ErrorKind::DimensionMismatch,
                   "equal_up_to_global_phase operands differ in shape");
  PhaseMatch out;
  if (a.size() == 0) {
    out.equal = true;
    return out;
  }
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) <= tol) {
    out.deviation = max_abs(a);
    out.equal = out.deviation <= tol;
    return out;
  }
  out.phase = reduce_phase(std::arg(a(r, c) / b(r, c)));
  out.deviation = max_abs(a - std::polar(1.0, out.phase) * b);
  out.equal = out.deviation <= tol;
  return out;
}

CMat kron(const CMat &a, const CMat &b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat matmul(const CMat &a, const CMat &b) {
  if (a.cols() != b.rows())
    throw DqcError(ErrorKind::DimensionMismatch, "matmul inner dimensions");
  return a * b;
}

namespace {

void check_wires(const CMat &gate, const std::vector<int> &wires, int n) {
  const Eigen::Index dim = Eigen::Index(1) << wires.size();
  if (gate.rows() != dim || gate.cols() != dim)
    throw DqcError(ErrorKind::DimensionMismatch,
                   "gate dimension does not match wire count");
  for (size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] < 0 || wires[i] >= n)
      throw DqcError(ErrorKind::WireOutOfRange,
                     "wire " + std::to_string(wires[i]) + " outside 0.." +
                         std::to_string(n - 1));
    for (size_t j = 0; j < i; ++j)
      if (wires[i] == wires[j])
        throw DqcError(ErrorKind::WireOutOfRange, "repeated wire");
  }
}

}  // namespace

CMat embed_gate(const CMat &gate, const std::vector<int> &wires, int n) {
  check_wires(gate, wires, n);
  CMat out = identity(1 << n);
  apply_gate(out, gate, wires, n);
  return out;
}

void apply_gate(CMat &state, const CMat &gate, const std::vector<int> &wires,
                int n) {
  check_wires(gate, wires, n);
  if (state.rows() != (Eigen::Index(1) << n))
    throw DqcError(ErrorKind::DimensionMismatch, "state row count");
  const int k = static_cast<int>(wires.size());
  const int sub = 1 << k;
  std::vector<long> offs(sub, 0);
  long mask = 0;
  for (int s = 0; s < sub; ++s)
    for (int b = 0; b < k; ++b)
      if (s & (1 << (k - 1 - b))) offs[s] |= 1L << (n - 1 - wires[b]);
  for (int b = 0; b < k; ++b) mask |= 1L << (n - 1 - wires[b]);

  const long rows = 1L << n;
  CMat block(sub, state.cols());
  for (long base = 0; base < rows; ++base) {
    if (base & mask) continue;
    for (int s = 0; s < sub; ++s) block.row(s) = state.row(base | offs[s]);
    CMat mixed = gate * block;
    for (int s = 0; s < sub; ++s) state.row(base | offs[s]) = mixed.row(s);
  }
}

const char *sq_tag_name(SqTag tag) {
  switch (tag) {
    case SqTag::Diagonal: return "Diagonal";
    case SqTag::AntiDiagonal: return "AntiDiagonal";
    case SqTag::OneHadamard: return "OneHadamard";
    case SqTag::TwoHadamard: return "TwoHadamard";
  }
  return "?";
}

CMat reconstruct(const SingleQubitClass &c) {
  switch (c.tag) {
    case SqTag::Diagonal: return gate_v(c.alpha);
    case SqTag::AntiDiagonal: return gate_x() * gate_v(c.alpha);
    case SqTag::OneHadamard:
      return gate_v(c.gamma) * gate_h() * gate_v(c.alpha);
    case SqTag::TwoHadamard:
      return gate_v(c.gamma) * gate_h() * gate_v(c.beta) * gate_h() *
             gate_v(c.alpha);
  }
  return identity(2);
}

SingleQubitClass classify_single_qubit(const CMat &u) {
  if (u.rows() != 2 || u.cols() != 2)
    throw DqcError(ErrorKind::DimensionMismatch, "single-qubit gate must be 2x2");
  require_unitary(u, "classify_single_qubit");
  SingleQubitClass c;
  const double a00 = std::abs(u(0, 0)), a01 = std::abs(u(0, 1));
  const double a10 = std::abs(u(1, 0)), a11 = std::abs(u(1, 1));
  if (a01 <= kTol && a10 <= kTol) {
    c.tag = SqTag::Diagonal;
    c.alpha = snap_phase(std::arg(u(1, 1) / u(0, 0)));
    return c;
  }
  if (a00 <= kTol && a11 <= kTol) {
    c.tag = SqTag::AntiDiagonal;
    c.alpha = snap_phase(std::arg(u(0, 1) / u(1, 0)));
    return c;
  }
  SingleQubitClass one;
  one.tag = SqTag::OneHadamard;
  one.alpha = snap_phase(std::arg(u(0, 1) / u(0, 0)));
  one.gamma = snap_phase(std::arg(u(1, 0) / u(0, 0)));
  if (equal_up_to_global_phase(u, reconstruct(one)).equal) return one;

  c.tag = SqTag::TwoHadamard;
  c.beta = snap_phase(2.0 * std::atan2(a01, a00));
  c.alpha = snap_phase(std::arg(u(0, 1) / u(0, 0)) + kPi / 2);
  c.gamma = snap_phase(std::arg(u(1, 0) / u(0, 0)) + kPi / 2);
  return c;
}

Diagonalization diagonalize_2x2_unitary(const CMat &u) {
  if (u.rows() != 2 || u.cols() != 2)
    throw DqcError(ErrorKind::DimensionMismatch, "expected a 2x2 matrix");
  require_unitary(u, "diagonalize_2x2_unitary");
  Diagonalization d;
  if (std::abs(u(0, 1)) <= kTol && std::abs(u(1, 0)) <= kTol) {
    double p0 = snap_phase(std::arg(u(0, 0)));
    double p1 = snap_phase(std::arg(u(1, 1)));
    d.w = identity(2);
    if (p1 < p0) {
      std::swap(p0, p1);
      d.w = gate_x();
    }
    d.theta0 = p0;
    d.theta1 = p1;
    return d;
  }

  const Complex tr = u(0, 0) + u(1, 1);
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  Complex l0 = (tr + disc) / 2.0, l1 = (tr - disc) / 2.0;
  l0 /= std::abs(l0);
  l1 /= std::abs(l1);
  double p0 = snap_phase(std::arg(l0)), p1 = snap_phase(std::arg(l1));
  if (p1 < p0) {
    std::swap(p0, p1);
    std::swap(l0, l1);
  }

  Eigen::Vector2cd v;
  if (std::abs(u(0, 1)) >= std::abs(u(1, 0)))
    v << u(0, 1), l0 - u(0, 0);
  else
    v << l0 - u(1, 1), u(1, 0);
  v.normalize();
  Eigen::Vector2cd w2;
  w2 << -std::conj(v(1)), std::conj(v(0));

  auto fix = [](Eigen::Vector2cd &col) {
    Complex lead = std::abs(col(0)) > kTol ? col(0) : col(1);
    col *= std::conj(lead) / std::abs(lead);
  };
  fix(v);
  fix(w2);
  d.w.resize(2, 2);
  d.w.col(0) = v;
  d.w.col(1) = w2;
  d.theta0 = p0;
  d.theta1 = p1;
  return d;
}

}  // namespace dqc
