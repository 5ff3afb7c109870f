#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinmetro {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Central tolerance table. Matrix norms are max-abs entry throughout.
namespace tol {
inline constexpr double hermiticity = 1e-12;         // relative to max-abs entry
inline constexpr double trace = 1e-12;               // density-matrix trace
inline constexpr double algebra = 1e-12;             // su(2) commutator identities
inline constexpr double eig_roundtrip = 1e-10;       // eigendecomposition reconstruction
inline constexpr double tensor = 1e-10;              // spherical-tensor defining conditions
inline constexpr double density_negativity = 1e-10;  // eigenvalue floor for densities
inline constexpr double cumulant_negativity = 1e-9;  // clip-and-renormalize threshold
inline constexpr double eigenvalue_cutoff = 1e-12;   // p_i + p_j cutoff in Fisher sums
}  // namespace tol

// Numerical failure (cumulant-approximation breakdown, non-convergent
// quadrature, regime-guard violation). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace spinmetro
