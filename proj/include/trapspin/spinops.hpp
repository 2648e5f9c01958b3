#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace trapspin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Largest spin register the dense backend accepts.
inline constexpr int kMaxSites = 12;

/// Dense operator on n spin-1/2 sites (dim 2^n).
///
/// Tensor ordering: site 0 is the leftmost, most significant factor, so the
/// computational basis index of |b0 b1 ... b_{n-1}> is sum b_s 2^(n-1-s).
/// Basis state |0> is the sigma_z = +1 eigenstate.
class Operator {
 public:
  /// Validates that `m` is square, finite, and of power-of-two dimension >= 2.
  explicit Operator(Matrix m);

  static Operator identity(int n_sites);
  static Operator zero(int n_sites);

  int dim() const { return static_cast<int>(m_.rows()); }
  int n_sites() const { return n_sites_; }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_diagonal(double tol) const;

  Operator adjoint() const;
  Complex trace() const { return m_.trace(); }

  /// max_ij |a_ij - b_ij|
  double max_norm_distance(const Operator& other) const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= Complex(s, 0.0); }
  friend Operator operator*(double s, Operator a) { return a *= Complex(s, 0.0); }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix m_;
  int n_sites_ = 0;
};

enum class Axis { X, Y, Z, Plus, Minus };

/// Single-site 2x2 matrix for the given axis. sigma_+- = (sigma_x +- i sigma_y)/2.
Matrix pauli_matrix(Axis axis);

/// I x ... x sigma_axis x ... x I with sigma at `site`.
Operator pauli(Axis axis, int site, int n_sites);

/// Places a 2^k x 2^k local operator on the listed sites of an n-site register.
/// `sites[0]` is the most significant factor of `local`.
Operator embed(const Matrix& local, std::span<const int> sites, int n_sites);
Operator embed(const Matrix& local, std::initializer_list<int> sites, int n_sites);

/// Kronecker product a x b.
Operator kron(const Operator& a, const Operator& b);

/// sigma_i . sigma_j on an n-site register.
Operator heisenberg_coupling(int i, int j, int n_sites);

/// Exchanges sites i and j.
Operator swap_operator(int i, int j, int n_sites);

/// exp(-i H t) for Hermitian H (within 1e-10 relative), by eigen-decomposition.
Operator expm_h(const Operator& h, double t);

/// H(t)/hbar in rad/s.
using HamiltonianFn = std::function<Operator(double)>;

enum class Stepper {
  /// exp(-i H(t_mid) dt); second order.
  Midpoint,
  /// Two Gauss points per step, exp(-i [dt (H1 + H2)/2 - i sqrt(3) dt^2 [H2, H1] / 12]);
  /// fourth order.
  Magnus4,
};

/// Time-ordered propagator over [t0, t1] as a product of `steps` unitary steps.
Operator evolve_td(const HamiltonianFn& hamiltonian, double t0, double t1, int steps,
                   Stepper stepper = Stepper::Midpoint);

/// |Tr(U^dagger V)| / dim; insensitive to global phase.
double fidelity(const Operator& u, const Operator& v);

/// Phase phi minimising |V - e^{i phi} U|, i.e. arg Tr(U^dagger V).
double global_phase(const Operator& u, const Operator& v);

}  // namespace trapspin
