#pragma once

#include <cstdint>

#include "spinmetro/types.hpp"

namespace spinmetro {

// Stationary Gaussian noise entering the Hamiltonian as w(t).J. The two
// in-plane components are i.i.d. ("perp" channel); the z component may have
// its own strength and correlation time, including zero strength.
//
// Ornstein-Uhlenbeck channels have kappa(s) = variance * exp(-|s|/tau_c).
// The white-noise limit keeps 1/T = integral of kappa fixed per channel,
// kappa(s) -> (2/T) delta(s).
enum class NoiseKind { kOrnsteinUhlenbeck, kWhite };
enum class NoiseChannel { kPerpendicular, kZ };

struct ChannelSpec {
  double variance = 0.0;    // omega_0^2 [rad^2/time^2] (OU)
  double tau_c = 1.0;       // correlation time [time]   (OU)
  double white_rate = 0.0;  // 1/T [1/time]              (white)
};

struct NoiseModel {
  NoiseKind kind = NoiseKind::kOrnsteinUhlenbeck;
  ChannelSpec perp;
  ChannelSpec z;

  static NoiseModel ornstein_uhlenbeck(double perp_variance, double perp_tau_c,
                                       double z_variance = 0.0,
                                       double z_tau_c = 1.0);
  static NoiseModel white(double perp_rate, double z_rate = 0.0);
  static NoiseModel none();  // zero-strength OU; exact unitary evolution

  const ChannelSpec& channel(NoiseChannel c) const {
    return c == NoiseChannel::kPerpendicular ? perp : z;
  }
  void validate() const;
};

// kappa(dt) of one channel; rejected for white noise (no pointwise value).
double kappa(const NoiseModel& model, NoiseChannel channel, double dt);

// Gamma(t, Omega) = int_0^t dt1 int_0^t1 dt2 kappa(t1-t2) e^{i Omega (t1-t2)}.
// OU closed form: variance * [t/a - (1 - e^{-a t})/a^2], a = 1/tau_c - i Omega;
// white noise: t/T, independent of Omega.
Complex gamma(const NoiseModel& model, NoiseChannel channel, double t,
              double omega);
// Analytic d Gamma / d Omega of the closed form.
Complex gamma_domega(const NoiseModel& model, NoiseChannel channel, double t,
                     double omega);

// Gamma_0 from the z channel at Omega = 0; Gamma_+ = Re, Gamma_- = Im of the
// perpendicular channel at Omega, with analytic Omega-derivatives.
struct DecayRates {
  double gamma0 = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double dgamma_plus_domega = 0.0;
  double dgamma_minus_domega = 0.0;
  double t = 0.0;
  double omega = 0.0;
};

DecayRates decay_rates(const NoiseModel& model, double t, double omega);

// Deterministic stream splitting: trajectory k of a run seeded with `master`
// uses derive_stream_seed(master, k).
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream);

// Exact OU sampling on an ascending time grid: stationary start
// w(t0) ~ Normal(0, variance), then
// w(t+dt) = w(t) e^{-dt/tau_c} + omega_0 sqrt(1 - e^{-2 dt/tau_c}) xi.
RealVector sample_ou_trajectory(const NoiseModel& model, NoiseChannel channel,
                                const RealVector& t_grid, std::uint64_t seed);

}  // namespace spinmetro
