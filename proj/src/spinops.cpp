#include "trapspin/spinops.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "trapspin/error.hpp"

namespace trapspin {

namespace {

int sites_for_dim(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1 && d % 2 == 0) {
    d /= 2;
    ++n;
  }
  if (d != 1 || n < 1) throw DomainError("operator dimension must be 2^n with n >= 1");
  return n;
}

void check_sites(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw DomainError("number of sites must be in [1, " + std::to_string(kMaxSites) + "]");
  }
}

void check_site(int site, int n_sites) {
  if (site < 0 || site >= n_sites) {
    throw DomainError("site " + std::to_string(site) + " out of range for " +
                      std::to_string(n_sites) + " sites");
  }
}

double scale_of(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("operator must be square");
  n_sites_ = sites_for_dim(m_.rows());
  if (n_sites_ > kMaxSites) throw DomainError("operator exceeds the dense register cap");
  if (!m_.allFinite()) throw DomainError("operator entries must be finite");
}

Operator Operator::identity(int n_sites) {
  check_sites(n_sites);
  const Eigen::Index d = Eigen::Index{1} << n_sites;
  return Operator(Matrix::Identity(d, d));
}

Operator Operator::zero(int n_sites) {
  check_sites(n_sites);
  const Eigen::Index d = Eigen::Index{1} << n_sites;
  return Operator(Matrix::Zero(d, d));
}

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale_of(m_);
}

bool Operator::is_unitary(double tol) const {
  const Matrix prod = m_.adjoint() * m_;
  return (prod - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_diagonal(double tol) const {
  Matrix off = m_;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::adjoint() const { return Operator(m_.adjoint()); }

double Operator::max_norm_distance(const Operator& other) const {
  if (other.dim() != dim()) throw DomainError("dimension mismatch");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

Operator& Operator::operator+=(const Operator& rhs) {
  if (rhs.dim() != dim()) throw DomainError("dimension mismatch");
  m_ += rhs.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  if (rhs.dim() != dim()) throw DomainError("dimension mismatch");
  m_ -= rhs.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  return Operator(a.m_ * b.m_);
}

Matrix pauli_matrix(Axis axis) {
  using namespace std::complex_literals;
  Matrix m = Matrix::Zero(2, 2);
  switch (axis) {
    case Axis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Axis::Y:
      m(0, 1) = -1i;
      m(1, 0) = 1i;
      break;
    case Axis::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Axis::Plus:
      m(0, 1) = 1.0;
      break;
    case Axis::Minus:
      m(1, 0) = 1.0;
      break;
  }
  return m;
}

Operator embed(const Matrix& local, std::span<const int> sites, int n_sites) {
  check_sites(n_sites);
  const int k = static_cast<int>(sites.size());
  if (k < 1 || local.rows() != (Eigen::Index{1} << k) || local.cols() != local.rows()) {
    throw DomainError("local operator dimension does not match the number of sites");
  }
  for (int a = 0; a < k; ++a) {
    check_site(sites[a], n_sites);
    for (int b = 0; b < a; ++b) {
      if (sites[a] == sites[b]) throw DomainError("embed sites must be distinct");
    }
  }

  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  std::vector<Eigen::Index> bit(k);
  Eigen::Index mask = 0;
  for (int a = 0; a < k; ++a) {
    bit[a] = Eigen::Index{1} << (n_sites - 1 - sites[a]);
    mask |= bit[a];
  }
  auto local_index = [&](Eigen::Index full) {
    Eigen::Index li = 0;
    for (int a = 0; a < k; ++a) li = (li << 1) | ((full & bit[a]) ? 1 : 0);
    return li;
  };
  auto scatter = [&](Eigen::Index base, Eigen::Index li) {
    Eigen::Index full = base;
    for (int a = 0; a < k; ++a) {
      if (li & (Eigen::Index{1} << (k - 1 - a))) full |= bit[a];
    }
    return full;
  };

  Matrix out = Matrix::Zero(dim, dim);
  const Eigen::Index ldim = local.rows();
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Eigen::Index base = col & ~mask;
    const Eigen::Index lc = local_index(col);
    for (Eigen::Index lr = 0; lr < ldim; ++lr) {
      const Complex v = local(lr, lc);
      if (v != Complex{}) out(scatter(base, lr), col) = v;
    }
  }
  return Operator(std::move(out));
}

Operator embed(const Matrix& local, std::initializer_list<int> sites, int n_sites) {
  return embed(local, std::span<const int>(sites.begin(), sites.size()), n_sites);
}

Operator pauli(Axis axis, int site, int n_sites) {
  check_sites(n_sites);
  check_site(site, n_sites);
  return embed(pauli_matrix(axis), {site}, n_sites);
}

Operator kron(const Operator& a, const Operator& b) {
  const Matrix& A = a.matrix();
  const Matrix& B = b.matrix();
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return Operator(std::move(out));
}

Operator heisenberg_coupling(int i, int j, int n_sites) {
  if (i == j) throw DomainError("heisenberg coupling needs two distinct sites");
  Operator out = Operator::zero(n_sites);
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) out += pauli(a, i, n_sites) * pauli(a, j, n_sites);
  return out;
}

Operator swap_operator(int i, int j, int n_sites) {
  if (i == j) throw DomainError("swap needs two distinct sites");
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return embed(s, {i, j}, n_sites);
}

Operator expm_h(const Operator& h, double t) {
  if (!h.is_hermitian(1e-10)) throw DomainError("expm_h requires a Hermitian operator");
  if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
  const Matrix herm = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  return Operator(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

Operator evolve_td(const HamiltonianFn& hamiltonian, double t0, double t1, int steps,
                   Stepper stepper) {
  if (steps < 1) throw DomainError("evolve_td needs at least one step");
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw DomainError("time bounds must be finite");
  const double dt = (t1 - t0) / steps;
  if (stepper == Stepper::Midpoint) {
    Operator u = expm_h(hamiltonian(t0 + 0.5 * dt), dt);
    for (int k = 1; k < steps; ++k) u = expm_h(hamiltonian(t0 + (k + 0.5) * dt), dt) * u;
    return u;
  }
  const double c = std::sqrt(3.0) / 6.0;
  Operator u = Operator::identity(hamiltonian(t0).n_sites());
  for (int k = 0; k < steps; ++k) {
    const double tm = t0 + (k + 0.5) * dt;
    const Matrix h1 = hamiltonian(tm - c * dt).matrix();
    const Matrix h2 = hamiltonian(tm + c * dt).matrix();
    const Matrix comm = h2 * h1 - h1 * h2;
    Matrix k_eff = (0.5 * dt) * (h1 + h2) - Complex(0.0, std::sqrt(3.0) * dt * dt / 12.0) * comm;
    // Round off the anti-Hermitian residue so the eigensolver sees an exact Hermitian input.
    k_eff = 0.5 * (k_eff + k_eff.adjoint()).eval();
    u = expm_h(Operator(std::move(k_eff)), 1.0) * u;
  }
  return u;
}

double fidelity(const Operator& u, const Operator& v) {
  if (u.dim() != v.dim()) throw DomainError("fidelity: dimension mismatch");
  if (!u.is_unitary(1e-8) || !v.is_unitary(1e-8)) {
    throw DomainError("fidelity: operands must be unitary");
  }
  const double f = std::abs((u.matrix().adjoint() * v.matrix()).trace()) / u.dim();
  return std::min(f, 1.0);
}

double global_phase(const Operator& u, const Operator& v) {
  if (u.dim() != v.dim()) throw DomainError("global_phase: dimension mismatch");
  return std::arg((u.matrix().adjoint() * v.matrix()).trace());
}

}  // namespace trapspin
