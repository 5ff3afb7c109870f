#include "spinmetro/spin_system.hpp"

#include <cmath>

namespace spinmetro {

SpinSystem::SpinSystem(int n_particles) : n_(n_particles) {
  if (n_particles < 1) throw std::invalid_argument("SpinSystem: N must be >= 1");
}

double SpinSystem::raise_factor(double m) const {
  const double jj = j() * (j() + 1.0);
  return std::sqrt(std::max(0.0, jj - m * (m + 1.0)));
}

double SpinSystem::lower_factor(double m) const {
  const double jj = j() * (j() + 1.0);
  return std::sqrt(std::max(0.0, jj - m * (m - 1.0)));
}

Matrix jz(const SpinSystem& s) {
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) out(i, i) = s.m(i);
  return out;
}

Matrix jplus(const SpinSystem& s) {
  // Raising J+ |j,m(i)> = raise_factor * |j,m(i)+1>; m decreases with index,
  // so J+ populates the superdiagonal.
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  for (int i = 1; i < s.dim(); ++i) out(i - 1, i) = s.raise_factor(s.m(i));
  return out;
}

Matrix jminus(const SpinSystem& s) {
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  for (int i = 0; i + 1 < s.dim(); ++i) out(i + 1, i) = s.lower_factor(s.m(i));
  return out;
}

Matrix jx(const SpinSystem& s) { return 0.5 * (jplus(s) + jminus(s)); }

Matrix jy(const SpinSystem& s) {
  return Complex(0.0, -0.5) * (jplus(s) - jminus(s));
}

bool is_hermitian(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = max_abs(a);
  if (scale == 0.0) return true;
  return max_abs(a - a.adjoint()) <= rel_tol * scale;
}

void require_hermitian(const Matrix& a, double rel_tol) {
  if (!is_hermitian(a, rel_tol))
    throw std::invalid_argument("matrix is not hermitian within tolerance");
}

void require_density(const Matrix& rho) {
  require_hermitian(rho);
  if (std::abs(rho.trace() - Complex(1.0)) > 1e3 * tol::trace)
    throw std::invalid_argument("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::density_negativity)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

Eigensystem hermitian_eigendecomposition(const Matrix& a, double rel_tol) {
  require_hermitian(a, rel_tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian eigendecomposition failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix unitary_from_generator(const Matrix& h, double t) {
  require_hermitian(h);
  const int d = static_cast<int>(h.rows());
  Matrix offdiag = h;
  offdiag.diagonal().setZero();
  if (max_abs(offdiag) == 0.0) {
    Matrix u = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      u(i, i) = std::exp(Complex(0.0, -t * h(i, i).real()));
    return u;
  }
  const Eigensystem es = hermitian_eigendecomposition(h);
  Vector phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::exp(Complex(0.0, -t * es.values(i)));
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Complex expectation(const Matrix& op, const Matrix& rho) {
  // Tr(op rho) without forming the product.
  return op.cwiseProduct(rho.transpose()).sum();
}

double real_expectation(const Matrix& op, const Matrix& rho) {
  return expectation(op, rho).real();
}

double purity(const Matrix& rho) { return rho.squaredNorm(); }

double trace_distance(const Matrix& a, const Matrix& b) {
  Matrix diff = a - b;
  diff = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity_with_pure(const Matrix& rho, const Vector& psi) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

}  // namespace spinmetro
