#pragma once

#include <cstdint>

#include "spinmetro/noise.hpp"
#include "spinmetro/spin_system.hpp"
#include "spinmetro/tensor_basis.hpp"

namespace spinmetro {

// Phase imprint H = Omega Jz + w(t).J over duration tau, starting from rho0.
struct EvolutionSpec {
  SpinSystem system;
  Matrix rho0;
  NoiseModel noise;
  double omega = 0.0;  // deterministic field [rad/time]
  double tau = 0.0;    // imprint duration [time]

  void validate() const;
};

// Second-cumulant solution in the tensor basis. Each coefficient
// c^(r)_m = Tr(T^(r)+_m rho) is multiplied by
//   exp(-m^2 Gamma_0 - (r(r+1) - m^2) Gamma_+) * exp(-i m (Omega tau - Gamma_-)),
// with Gamma_0 from the z channel and Gamma_+- from the perpendicular one.
// The sign of the phase is fixed by the noiseless limit: the result must equal
// exp(-i Omega tau Jz) rho0 exp(+i Omega tau Jz) exactly when the noise is off.
//
// Output eigenvalues in (-1e-9, 0) are clipped to zero and the state is
// renormalized; anything below -1e-9 throws NumericalError (cumulant
// approximation breakdown).
Matrix evolve_analytic(const EvolutionSpec& spec, const TensorBasis& basis);

// d rho_S(tau) / d Omega by the chain rule on the coefficient solution:
// d c^(r)_m = [-(r(r+1) - m^2) dGamma_+ + i m (dGamma_- - tau)] c^(r)_m(tau).
Matrix evolve_analytic_derivative(const EvolutionSpec& spec,
                                  const TensorBasis& basis);

// Monte-Carlo trajectory averaging: per step the generator
// (Omega + w_z) Jz + w_x Jx + w_y Jy is sampled at the step midpoint and
// exponentiated exactly; trajectories are averaged in fixed batch order so a
// given (seed, n_traj, n_batches) is bit-reproducible for any thread count.
struct MCConfig {
  int n_traj = 10000;
  double dt = 0.0;  // <= 0: auto from the invariants below, with margin
  std::uint64_t seed = 12345;
  int n_batches = 20;  // >= 20 for the batch-means error estimate
  int n_threads = 0;   // 0: hardware concurrency

  // dt must satisfy dt <= tau_c/20 per active channel and
  // dt (|Omega| + 3 (sigma_perp + sigma_z)) <= 0.1.
};

struct MCResult {
  Matrix rho_mean;
  double stderr_scale = 0.0;  // max over entries of the batch-means stderr
  RealMatrix stderr_re;
  RealMatrix stderr_im;
};

double suggested_mc_dt(const EvolutionSpec& spec);

MCResult evolve_montecarlo(const EvolutionSpec& spec, const MCConfig& mc);

}  // namespace spinmetro
