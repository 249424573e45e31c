#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "dqc/error.hpp"

namespace dqc {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;

constexpr double kTol = 1e-9;
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
const Complex kI{0.0, 1.0};

// Phase helpers. reduce_phase maps into [0, 2pi); snap_phase additionally
// pulls values within kTol of a multiple of pi/2 onto it.
double reduce_phase(double phi);
double snap_phase(double phi);
bool phase_is_multiple_of_pi(double phi);

CMat identity(int dim);
CMat gate_h();
CMat gate_x();
CMat gate_z();
CMat gate_v(double theta);  // diag(1, e^{i theta})
CMat gate_rz(double theta);
CMat gate_cz();
CMat gate_cnot();  // control = first wire
CMat gate_cp(double theta);
CMat gate_swap();
CMat controlled(const CMat &u0, const CMat &u1);

double max_abs(const CMat &m);
bool is_unitary(const CMat &m, double tol = kTol);
void require_unitary(const CMat &m, const char *what);

struct PhaseMatch {
  bool equal = false;
  double phase = 0.0;      // a ~= e^{i phase} b
  double deviation = 0.0;  // max |a - e^{i phase} b|
};

PhaseMatch equal_up_to_global_phase(const CMat &a, const CMat &b,
                                    double tol = kTol);

CMat kron(const CMat &a, const CMat &b);
CMat matmul(const CMat &a, const CMat &b);

// Operator acting as `gate` on `wires` (gate's first wire is its most
// significant bit) and identity elsewhere. Wire 0 is the most significant.
CMat embed_gate(const CMat &gate, const std::vector<int> &wires, int n);

// In-place left multiplication by embed_gate(gate, wires, n) without forming
// the full operator. `state` has 2^n rows and any number of columns.
void apply_gate(CMat &state, const CMat &gate, const std::vector<int> &wires,
                int n);

enum class SqTag { Diagonal, AntiDiagonal, OneHadamard, TwoHadamard };

// Diagonal: u ~ V(alpha). AntiDiagonal: u ~ X V(alpha).
// OneHadamard: u ~ V(gamma) H V(alpha). TwoHadamard: u ~ V(gamma) H V(beta) H V(alpha).
struct SingleQubitClass {
  SqTag tag = SqTag::Diagonal;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  bool is_d() const {
    return tag == SqTag::Diagonal || tag == SqTag::AntiDiagonal;
  }
  int antidiag() const { return tag == SqTag::AntiDiagonal ? 1 : 0; }
};

const char *sq_tag_name(SqTag tag);
SingleQubitClass classify_single_qubit(const CMat &u);
CMat reconstruct(const SingleQubitClass &c);

struct Diagonalization {
  CMat w;
  double theta0 = 0.0;
  double theta1 = 0.0;
};

// u = e^{i theta0} W V(theta1 - theta0) W^dagger, theta0 <= theta1 in [0, 2pi).
Diagonalization diagonalize_2x2_unitary(const CMat &u);

}  // namespace dqc
