#include "spinmetro/tensor_basis.hpp"

#include <cmath>

namespace spinmetro {

namespace {

int band_col_min(int m) { return std::max(0, m); }

// Unit-norm band of (J+)^rank. Entries are products of up to `rank` ladder
// factors; for N ~ 100 the raw products overflow double, so they are formed
// in log space and normalized under a max shift.
Vector highest_weight_band(const SpinSystem& s, int rank) {
  const int len = s.dim() - rank;
  if (rank == 0)
    return Vector::Constant(len, Complex(1.0 / std::sqrt(double(s.dim())), 0.0));
  RealVector logs(len);
  for (int t = 0; t < len; ++t) {
    const int col = t + rank;
    double acc = 0.0;
    for (int k = 0; k < rank; ++k) acc += std::log(s.raise_factor(s.m(col) + k));
    logs(t) = acc;
  }
  const double shift = logs.maxCoeff();
  RealVector vals = (logs.array() - shift).exp();
  vals /= vals.norm();
  return vals.cast<Complex>();
}

}  // namespace

int band_length(const SpinSystem& s, int m) { return s.dim() - std::abs(m); }

Complex band_at_column(const Vector& band, int m, int column) {
  const int idx = column - band_col_min(m);
  if (idx < 0 || idx >= band.size()) return Complex(0.0);
  return band(idx);
}

Matrix band_to_matrix(const SpinSystem& s, const Vector& band, int m) {
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  out.diagonal(m) = band;
  return out;
}

Vector ad_jplus(const SpinSystem& s, const Vector& band, int m) {
  const int out_m = m + 1;
  const int len = band_length(s, out_m);
  Vector out(len);
  for (int t = 0; t < len; ++t) {
    const int c = t + band_col_min(out_m);
    out(t) = s.raise_factor(s.m(c - m)) * band_at_column(band, m, c) -
             s.raise_factor(s.m(c)) * band_at_column(band, m, c - 1);
  }
  return out;
}

Vector ad_jminus(const SpinSystem& s, const Vector& band, int m) {
  const int out_m = m - 1;
  const int len = band_length(s, out_m);
  Vector out(len);
  for (int t = 0; t < len; ++t) {
    const int c = t + band_col_min(out_m);
    out(t) = s.lower_factor(s.m(c - m)) * band_at_column(band, m, c) -
             s.lower_factor(s.m(c)) * band_at_column(band, m, c + 1);
  }
  return out;
}

TensorBasis::TensorBasis(const SpinSystem& system)
    : TensorBasis(system, std::vector<Complex>(system.n() + 1, Complex(1.0))) {}

TensorBasis::TensorBasis(const SpinSystem& system, std::vector<Complex> block_phases)
    : system_(system), block_phases_(std::move(block_phases)) {
  if (static_cast<int>(block_phases_.size()) != system_.n() + 1)
    throw std::invalid_argument("TensorBasis: need one phase per rank");
  for (const Complex& p : block_phases_)
    if (std::abs(std::abs(p) - 1.0) > 1e-12)
      throw std::invalid_argument("TensorBasis: block phases must be unit modulus");
  blocks_.resize(system_.n() + 1);
  built_.reserve(system_.n() + 1);
  for (int r = 0; r <= system_.n(); ++r)
    built_.push_back(std::make_unique<std::once_flag>());
}

void TensorBasis::build_block(int rank) const {
  // Blocks are built from rank N downward. The raw lowering recurrence is
  // numerically unstable: rounding injects higher-rank components at the same
  // weight, and those are amplified because their lowering factors exceed the
  // one divided out. Projecting the already-built higher-rank bands back out
  // after every step (a no-op in exact arithmetic) keeps the recurrence stable
  // for any N used here; the defining conditions remain the test oracle.
  const auto stabilize = [this, rank](Vector& band, int m) {
    for (int higher = rank + 1; higher <= system_.n(); ++higher) {
      const Vector& other = blocks_[higher][m + higher];
      band -= other * other.dot(band);
    }
    band /= band.norm();
  };
  std::vector<Vector> block(2 * rank + 1);
  block[2 * rank] = highest_weight_band(system_, rank);
  stabilize(block[2 * rank], rank);
  for (int m = rank; m > -rank; --m) {
    const double denom =
        std::sqrt(double(rank) * (rank + 1.0) - double(m) * (m - 1.0));
    block[m - 1 + rank] = ad_jminus(system_, block[m + rank], m) / denom;
    stabilize(block[m - 1 + rank], m - 1);
  }
  if (block_phases_[rank] != Complex(1.0))
    for (Vector& band : block) band *= block_phases_[rank];
  blocks_[rank] = std::move(block);
}

const Vector& TensorBasis::band(int rank, int m) const {
  if (rank < 0 || rank > system_.n() || std::abs(m) > rank)
    throw std::invalid_argument("TensorBasis::band: indices out of range");
  for (int r = system_.n(); r >= rank; --r)
    std::call_once(*built_[r], [this, r] { build_block(r); });
  return blocks_[rank][m + rank];
}

Matrix TensorBasis::tensor(int rank, int m) const {
  return band_to_matrix(system_, band(rank, m), m);
}

TensorCoefficients::TensorCoefficients(const SpinSystem& system)
    : system_(system),
      coeffs_(Vector::Zero((system.n() + 1) * (system.n() + 1))) {}

int TensorCoefficients::index(int rank, int m) const {
  if (rank < 0 || rank > system_.n() || std::abs(m) > rank)
    throw std::invalid_argument("TensorCoefficients: indices out of range");
  return rank * rank + rank + m;
}

TensorCoefficients decompose(const TensorBasis& basis, const Matrix& rho) {
  const SpinSystem& s = basis.system();
  if (rho.rows() != s.dim() || rho.cols() != s.dim())
    throw std::invalid_argument("decompose: dimension mismatch");
  TensorCoefficients out(s);
  for (int rank = 0; rank <= s.n(); ++rank)
    for (int m = -rank; m <= rank; ++m)
      out.at(rank, m) = basis.band(rank, m).dot(rho.diagonal(m));
  return out;
}

Matrix reconstruct(const TensorBasis& basis, const TensorCoefficients& coeffs) {
  const SpinSystem& s = basis.system();
  if (coeffs.system() != s)
    throw std::invalid_argument("reconstruct: dimension mismatch");
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  for (int m = -s.n(); m <= s.n(); ++m) {
    Vector acc = Vector::Zero(band_length(s, m));
    for (int rank = std::abs(m); rank <= s.n(); ++rank)
      acc += coeffs.at(rank, m) * basis.band(rank, m);
    out.diagonal(m) = acc;
  }
  return out;
}

RealVector km_distribution(const TensorBasis& basis, const Matrix& rho0) {
  require_hermitian(rho0);
  const TensorCoefficients coeffs = decompose(basis, rho0);
  const int n = basis.system().n();
  RealVector km = RealVector::Zero(n + 1);
  for (int m = 0; m <= n; ++m)
    for (int rank = m; rank <= n; ++rank)
      km(m) += std::norm(coeffs.at(rank, m));
  return km;
}

}  // namespace spinmetro
