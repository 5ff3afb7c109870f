#include "spinmetro/states.hpp"

#include <cmath>

namespace spinmetro {

namespace {

// Columns span the even-parity sector: (e_i + e_{N-i})/sqrt(2), plus the
// middle basis vector when dim is odd.
RealMatrix even_parity_basis(const SpinSystem& s) {
  const int d = s.dim();
  const int ne = (d + 1) / 2;
  RealMatrix basis = RealMatrix::Zero(d, ne);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int c = 0; c < ne; ++c) {
    const int i = c;
    const int ir = d - 1 - c;
    if (i == ir) {
      basis(i, c) = 1.0;
    } else {
      basis(i, c) = inv_sqrt2;
      basis(ir, c) = inv_sqrt2;
    }
  }
  return basis;
}

RealVector bh_ground_vector(const SpinSystem& s, double gamma) {
  if (gamma > 0.0)
    throw std::invalid_argument("make_bh_ground: gamma must be <= 0");
  const RealMatrix h = bh_hamiltonian(s, gamma);
  const RealMatrix basis = even_parity_basis(s);
  const RealMatrix h_even = basis.transpose() * h * basis;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h_even);
  RealVector v = basis * es.eigenvectors().col(0);
  v.normalize();
  // Fix the overall sign: Perron-Frobenius makes the exact ground state
  // strictly positive, so require a positive dominant amplitude.
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
  return v;
}

}  // namespace

Matrix make_noon(const SpinSystem& s) {
  const int d = s.dim();
  Matrix rho = Matrix::Zero(d, d);
  rho(0, 0) = rho(0, d - 1) = rho(d - 1, 0) = rho(d - 1, d - 1) = 0.5;
  return rho;
}

Matrix make_css(const SpinSystem& s) {
  const int d = s.dim();
  const int n = s.n();
  RealVector amp(d);
  for (int i = 0; i < d; ++i) {
    const double log_binom =
        std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
    amp(i) = std::exp(0.5 * log_binom - 0.5 * n * std::log(2.0));
  }
  amp.normalize();
  const Matrix rho = (amp * amp.transpose()).cast<Complex>();
  return rho;
}

RealMatrix bh_hamiltonian(const SpinSystem& s, double gamma) {
  const int d = s.dim();
  // E_J fixed to 1; gamma = N U / E_J is the junction control parameter, so
  // the symmetric/broken transition of the attractive ground state sits at
  // gamma = -1 independent of N.
  const double u = gamma / s.n();
  RealMatrix h = RealMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) h(i, i) = u * s.m(i) * s.m(i);
  for (int i = 1; i < d; ++i) {
    const double t = -0.5 * s.raise_factor(s.m(i));
    h(i - 1, i) = t;
    h(i, i - 1) = t;
  }
  return h;
}

Matrix make_bh_ground(const SpinSystem& s, double gamma) {
  const RealVector v = bh_ground_vector(s, gamma);
  return (v * v.transpose()).cast<Complex>();
}

double bh_ground_energy(const SpinSystem& s, double gamma) {
  const RealVector v = bh_ground_vector(s, gamma);
  return v.dot(bh_hamiltonian(s, gamma) * v);
}

SpinMoments initial_moments(const SpinSystem& s, const Matrix& rho) {
  require_density(rho);
  const Matrix x = jx(s), y = jy(s), z = jz(s);
  SpinMoments m;
  m.jx = real_expectation(x, rho);
  m.jy = real_expectation(y, rho);
  m.jz = real_expectation(z, rho);
  m.jxx = real_expectation(x * x, rho);
  m.jyy = real_expectation(y * y, rho);
  m.jzz = real_expectation(z * z, rho);
  m.xy_sym = 0.5 * real_expectation(x * y + y * x, rho);
  m.xz_sym = 0.5 * real_expectation(x * z + z * x, rho);
  m.yz_sym = 0.5 * real_expectation(y * z + z * y, rho);
  return m;
}

}  // namespace spinmetro
