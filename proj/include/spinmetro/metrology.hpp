#pragma once

#include <string>

#include "spinmetro/evolution.hpp"
#include "spinmetro/states.hpp"

namespace spinmetro {

// Fisher-information calculators. All values are per experiment in units of
// 1/Omega^2, i.e. time^2.

enum class Protocol {
  kQfiExact,
  kQfiNoonApprox,
  kQfiWhitenoise,
  kCfiImbalance,
  kCfiImbalancePulsed,
  kFtildeDensity,
  kSnl,
  kSymmetryBound,
};

std::string protocol_name(Protocol p);

struct EstimationReport {
  Protocol protocol = Protocol::kQfiExact;
  double value = 0.0;
  int n = 0;
  double gamma = 0.0;
  double omega = 0.0;
  double tau = 0.0;
  std::string noise;
};

// F_Q = 2 sum_ij |<i| d rho/d Omega |j>|^2 / (p_i + p_j) on the analytically
// evolved state; pairs with p_i + p_j below tol::eigenvalue_cutoff are 0/0
// artifacts and are skipped.
double qfi_exact(const EvolutionSpec& spec, const TensorBasis& basis);

// N^2 tau^2 exp(-2 N (N+1) tau / T): NOON input, isotropic white noise.
double qfi_whitenoise(int n, double tau, double big_t);

// Small-N Gamma_+ approximation for a NOON input:
//   N^2 (tau - dGamma_-)^2 / (1 - N Gamma_+) exp(-2 N^2 Gamma_0 - 2 N Gamma_+)
//   + N Gamma_+ (d log Gamma_+ / d Omega)^2.
// Guarded by N Gamma_+ < 0.5.
double qfi_noon_approx(const EvolutionSpec& spec);

// Shot-noise limit for separable inputs.
double snl_bound(int n, double tau);

// Noiseless bound 4 tau^2 sum_a p_a sum_{m=0}^N m^2 sum_r |<psi_a|T^(r)_m|psi_a>|^2,
// saturated by pure states. The tau^2 converts the per-theta bound to Omega units.
double symmetry_bound(const Matrix& rho0, const TensorBasis& basis, double tau);

enum class Pulse { kNone, kHalfPiX };

// Classical Fisher information of the population-imbalance readout
// p(M|Omega) = <J,M| rho_S(tau) |J,M>, optionally after an instantaneous
// pi/2 pulse along x. Outcomes with p below tol::eigenvalue_cutoff contribute 0.
double cfi_imbalance(const EvolutionSpec& spec, const TensorBasis& basis,
                     Pulse pulse);

// Sensitivity of the least-squares fit of the far-field one-body density
// rho(x|Omega) = f^2(x) [N + 2 Re(e^{-ikx} <a+b>_tau)]. Closed form in the
// many-fringe limit; all inputs are initial-state moments, with the noise
// entering through the decay rates:
//   F1 = N (1-D)(alpha^2 + beta^2/D),  D = sqrt(1-w^2),  w = 2 C |<J+>_0| / N,
//   C = e^{-Gamma_0 - Gamma_+}, alpha = tau - dGamma_-, beta = dGamma_+,
// plus the two-body (second-order correlation) term; the reported value is
// F1^2 / (F1 + Q) with Q the fringe-averaged density-covariance correction.
// A vanishing fringe (|<J+>_0| = 0, e.g. NOON) gives 0.
double ftilde_density(const EvolutionSpec& spec);

// Independent route: direct quadrature of the one-body CFI and the
// second-order-correlation correction with an explicit Gaussian envelope and
// mode functions f(x) e^{+-ikx/2}; expectation values are traces against the
// evolved state. k * envelope width >= 20 (far field).
struct FtildeOracleConfig {
  double k_sigma = 40.0;   // fringes per envelope width
  int points = 4001;       // base 1D grid (odd, Simpson)
  int points_2d = 1401;    // base grid per axis for the 2D correction
  double span_sigmas = 8.0;
  double convergence = 1e-3;  // halving the step must move F by less than this
};

double ftilde_density_oracle(const EvolutionSpec& spec, const TensorBasis& basis,
                             const FtildeOracleConfig& config = {});

}  // namespace spinmetro
