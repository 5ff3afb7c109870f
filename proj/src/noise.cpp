#include "spinmetro/noise.hpp"

#include <cmath>
#include <random>

namespace spinmetro {

namespace {

void validate_channel(const ChannelSpec& c, NoiseKind kind) {
  if (kind == NoiseKind::kOrnsteinUhlenbeck) {
    if (c.variance < 0.0) throw std::invalid_argument("noise variance must be >= 0");
    if (c.tau_c <= 0.0) throw std::invalid_argument("OU correlation time must be > 0");
  } else {
    if (c.white_rate < 0.0) throw std::invalid_argument("white-noise rate must be >= 0");
  }
}

// variance * t^2 * sum_k (-z)^k / (k+2)!  with z = a t; used for |z| <= 1
// where the closed form cancels badly.
Complex gamma_series(double variance, double t, Complex z) {
  Complex sum(0.0), term(0.5);  // k = 0 term: 1/2!
  for (int k = 0;; ++k) {
    sum += term;
    if (std::abs(term) < 1e-20 * std::abs(sum) || k > 40) break;
    term *= -z / double(k + 3);
  }
  return variance * t * t * sum;
}

// i * variance * t^3 * sum_k (k+1) (-z)^k / (k+3)!
Complex gamma_domega_series(double variance, double t, Complex z) {
  Complex sum(0.0), term(1.0 / 6.0);  // k = 0 term: 1/3!
  for (int k = 0;; ++k) {
    sum += term;
    if (std::abs(term) < 1e-20 * std::abs(sum) || k > 40) break;
    term *= -z * double(k + 2) / (double(k + 1) * double(k + 4));
  }
  return Complex(0.0, 1.0) * variance * t * t * t * sum;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

NoiseModel NoiseModel::ornstein_uhlenbeck(double perp_variance, double perp_tau_c,
                                          double z_variance, double z_tau_c) {
  NoiseModel m;
  m.kind = NoiseKind::kOrnsteinUhlenbeck;
  m.perp = {perp_variance, perp_tau_c, 0.0};
  m.z = {z_variance, z_tau_c, 0.0};
  m.validate();
  return m;
}

NoiseModel NoiseModel::white(double perp_rate, double z_rate) {
  NoiseModel m;
  m.kind = NoiseKind::kWhite;
  m.perp = {0.0, 1.0, perp_rate};
  m.z = {0.0, 1.0, z_rate};
  m.validate();
  return m;
}

NoiseModel NoiseModel::none() { return ornstein_uhlenbeck(0.0, 1.0, 0.0, 1.0); }

void NoiseModel::validate() const {
  validate_channel(perp, kind);
  validate_channel(z, kind);
}

double kappa(const NoiseModel& model, NoiseChannel channel, double dt) {
  if (model.kind == NoiseKind::kWhite)
    throw std::invalid_argument("kappa: white noise has no pointwise correlation value");
  const ChannelSpec& c = model.channel(channel);
  return c.variance * std::exp(-std::abs(dt) / c.tau_c);
}

Complex gamma(const NoiseModel& model, NoiseChannel channel, double t,
              double omega) {
  if (t < 0.0) throw std::invalid_argument("gamma: t must be >= 0");
  const ChannelSpec& c = model.channel(channel);
  if (model.kind == NoiseKind::kWhite) return Complex(c.white_rate * t, 0.0);
  if (c.variance == 0.0 || t == 0.0) return Complex(0.0);
  const Complex a(1.0 / c.tau_c, -omega);
  const Complex z = a * t;
  if (std::abs(z) <= 1.0) return gamma_series(c.variance, t, z);
  return c.variance * (t / a + (std::exp(-z) - 1.0) / (a * a));
}

Complex gamma_domega(const NoiseModel& model, NoiseChannel channel, double t,
                     double omega) {
  if (t < 0.0) throw std::invalid_argument("gamma_domega: t must be >= 0");
  const ChannelSpec& c = model.channel(channel);
  if (model.kind == NoiseKind::kWhite) return Complex(0.0);
  if (c.variance == 0.0 || t == 0.0) return Complex(0.0);
  const Complex a(1.0 / c.tau_c, -omega);
  const Complex z = a * t;
  if (std::abs(z) <= 1.0) return gamma_domega_series(c.variance, t, z);
  const Complex em = std::exp(-z);
  return Complex(0.0, 1.0) * c.variance *
         (t * (1.0 + em) / (a * a) - 2.0 * (1.0 - em) / (a * a * a));
}

DecayRates decay_rates(const NoiseModel& model, double t, double omega) {
  DecayRates r;
  r.t = t;
  r.omega = omega;
  r.gamma0 = gamma(model, NoiseChannel::kZ, t, 0.0).real();
  const Complex gp = gamma(model, NoiseChannel::kPerpendicular, t, omega);
  const Complex dgp = gamma_domega(model, NoiseChannel::kPerpendicular, t, omega);
  r.gamma_plus = gp.real();
  r.gamma_minus = gp.imag();
  r.dgamma_plus_domega = dgp.real();
  r.dgamma_minus_domega = dgp.imag();
  // Gamma_0 and Gamma_+ are damping exponents and non-negative for any
  // stationary kappa; anything beyond rounding indicates a broken model.
  if (r.gamma0 < -1e-12 || r.gamma_plus < -1e-12)
    throw NumericalError("decay_rates: negative damping exponent");
  r.gamma0 = std::max(0.0, r.gamma0);
  r.gamma_plus = std::max(0.0, r.gamma_plus);
  return r;
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

RealVector sample_ou_trajectory(const NoiseModel& model, NoiseChannel channel,
                                const RealVector& t_grid, std::uint64_t seed) {
  if (model.kind != NoiseKind::kOrnsteinUhlenbeck)
    throw std::invalid_argument("sample_ou_trajectory: model is not Ornstein-Uhlenbeck");
  for (int i = 0; i + 1 < t_grid.size(); ++i)
    if (t_grid(i + 1) < t_grid(i))
      throw std::invalid_argument("sample_ou_trajectory: grid must be ascending");
  const ChannelSpec& c = model.channel(channel);
  RealVector out = RealVector::Zero(t_grid.size());
  if (c.variance == 0.0 || t_grid.size() == 0) return out;
  const double sigma = std::sqrt(c.variance);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> xi(0.0, 1.0);
  out(0) = sigma * xi(gen);
  for (int i = 0; i + 1 < t_grid.size(); ++i) {
    const double r = std::exp(-(t_grid(i + 1) - t_grid(i)) / c.tau_c);
    out(i + 1) = out(i) * r + sigma * std::sqrt(1.0 - r * r) * xi(gen);
  }
  return out;
}

}  // namespace spinmetro
