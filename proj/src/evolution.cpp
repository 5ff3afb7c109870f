#include "spinmetro/evolution.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "spinmetro/parallel.hpp"

namespace spinmetro {

namespace {

// Clip eigenvalues in (-tol::cumulant_negativity, 0) to zero and renormalize;
// reject anything lower so an approximation breakdown is loud, not silent.
Matrix enforce_positivity(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const RealVector& vals = es.eigenvalues();
  const double min_val = vals.minCoeff();
  if (min_val >= 0.0) return rho;
  if (min_val < -tol::cumulant_negativity)
    throw NumericalError(
        "evolve_analytic: cumulant approximation breakdown (eigenvalue " +
        std::to_string(min_val) + ")");
  RealVector clipped = vals.cwiseMax(0.0);
  clipped /= clipped.sum();
  Matrix out = es.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
               es.eigenvectors().adjoint();
  return 0.5 * (out + out.adjoint());
}

void scale_coefficients(TensorCoefficients& coeffs, const DecayRates& r,
                        double omega, double tau, bool derivative) {
  const int n = coeffs.system().n();
  const double theta = omega * tau - r.gamma_minus;
  for (int rank = 0; rank <= n; ++rank) {
    const double rr = double(rank) * (rank + 1.0);
    for (int m = -rank; m <= rank; ++m) {
      const double mm = double(m) * m;
      const double damp = std::exp(-mm * r.gamma0 - (rr - mm) * r.gamma_plus);
      Complex factor = damp * std::exp(Complex(0.0, -m * theta));
      if (derivative)
        factor *= Complex(-(rr - mm) * r.dgamma_plus_domega,
                          m * (r.dgamma_minus_domega - tau));
      coeffs.at(rank, m) *= factor;
    }
  }
}

struct StepSampler {
  // Midpoint samples of the three noise components for one trajectory.
  RealVector wx, wy, wz;
};

}  // namespace

void EvolutionSpec::validate() const {
  if (tau < 0.0) throw std::invalid_argument("EvolutionSpec: tau must be >= 0");
  if (rho0.rows() != system.dim() || rho0.cols() != system.dim())
    throw std::invalid_argument("EvolutionSpec: rho0 dimension mismatch");
  require_density(rho0);
  noise.validate();
}

Matrix evolve_analytic(const EvolutionSpec& spec, const TensorBasis& basis) {
  spec.validate();
  if (basis.system() != spec.system)
    throw std::invalid_argument("evolve_analytic: basis dimension mismatch");
  TensorCoefficients coeffs = decompose(basis, spec.rho0);
  const DecayRates r = decay_rates(spec.noise, spec.tau, spec.omega);
  scale_coefficients(coeffs, r, spec.omega, spec.tau, false);
  Matrix rho = reconstruct(basis, coeffs);
  rho = 0.5 * (rho + rho.adjoint());
  return enforce_positivity(rho);
}

Matrix evolve_analytic_derivative(const EvolutionSpec& spec,
                                  const TensorBasis& basis) {
  spec.validate();
  if (basis.system() != spec.system)
    throw std::invalid_argument("evolve_analytic_derivative: basis dimension mismatch");
  TensorCoefficients coeffs = decompose(basis, spec.rho0);
  const DecayRates r = decay_rates(spec.noise, spec.tau, spec.omega);
  scale_coefficients(coeffs, r, spec.omega, spec.tau, true);
  Matrix drho = reconstruct(basis, coeffs);
  return 0.5 * (drho + drho.adjoint());
}

double suggested_mc_dt(const EvolutionSpec& spec) {
  double dt = spec.tau > 0.0 ? spec.tau : 1.0;
  const ChannelSpec& perp = spec.noise.perp;
  const ChannelSpec& z = spec.noise.z;
  if (perp.variance > 0.0) dt = std::min(dt, perp.tau_c / 20.0);
  if (z.variance > 0.0) dt = std::min(dt, z.tau_c / 20.0);
  const double rot = std::abs(spec.omega) +
                     3.0 * (std::sqrt(perp.variance) + std::sqrt(z.variance));
  if (rot > 0.0) dt = std::min(dt, 0.1 / rot);
  return 0.5 * dt;
}

MCResult evolve_montecarlo(const EvolutionSpec& spec, const MCConfig& mc) {
  spec.validate();
  if (spec.noise.kind != NoiseKind::kOrnsteinUhlenbeck)
    throw std::invalid_argument(
        "evolve_montecarlo: only Ornstein-Uhlenbeck noise can be sampled");
  if (mc.n_traj < 1) throw std::invalid_argument("evolve_montecarlo: n_traj >= 1");
  if (mc.n_batches < 1) throw std::invalid_argument("evolve_montecarlo: n_batches >= 1");

  const double dt = mc.dt > 0.0 ? mc.dt : suggested_mc_dt(spec);
  const ChannelSpec& perp = spec.noise.perp;
  const ChannelSpec& zch = spec.noise.z;
  const double slack = 1.0 + 1e-9;
  if (perp.variance > 0.0 && dt > perp.tau_c / 20.0 * slack)
    throw std::invalid_argument("evolve_montecarlo: dt too large for perp tau_c");
  if (zch.variance > 0.0 && dt > zch.tau_c / 20.0 * slack)
    throw std::invalid_argument("evolve_montecarlo: dt too large for z tau_c");
  const double rot = std::abs(spec.omega) +
                     3.0 * (std::sqrt(perp.variance) + std::sqrt(zch.variance));
  if (dt * rot > 0.1 * slack)
    throw std::invalid_argument("evolve_montecarlo: dt does not resolve the rotation");

  const SpinSystem& s = spec.system;
  const int d = s.dim();
  const int steps = spec.tau > 0.0
                        ? std::max(1, int(std::ceil(spec.tau / dt - 1e-9)))
                        : 0;
  const double dt_eff = steps > 0 ? spec.tau / steps : 0.0;

  RealVector midpoints(steps);
  for (int k = 0; k < steps; ++k) midpoints(k) = (k + 0.5) * dt_eff;

  RealVector mz(d);
  for (int i = 0; i < d; ++i) mz(i) = s.m(i);
  RealVector offbase(std::max(0, d - 1));
  for (int i = 0; i + 1 < d; ++i) offbase(i) = 0.5 * s.raise_factor(s.m(i + 1));

  const bool has_perp = perp.variance > 0.0;

  auto run_trajectory = [&](std::uint64_t index) -> Matrix {
    const std::uint64_t seed = derive_stream_seed(mc.seed, index);
    // Independent sub-streams per component keep the draw order fixed.
    RealVector wx = has_perp
                        ? sample_ou_trajectory(spec.noise, NoiseChannel::kPerpendicular,
                                               midpoints, derive_stream_seed(seed, 0))
                        : RealVector::Zero(steps);
    RealVector wy = has_perp
                        ? sample_ou_trajectory(spec.noise, NoiseChannel::kPerpendicular,
                                               midpoints, derive_stream_seed(seed, 1))
                        : RealVector::Zero(steps);
    RealVector wz = zch.variance > 0.0
                        ? sample_ou_trajectory(spec.noise, NoiseChannel::kZ,
                                               midpoints, derive_stream_seed(seed, 2))
                        : RealVector::Zero(steps);
    Matrix u = Matrix::Identity(d, d);
    for (int k = 0; k < steps; ++k) {
      if (!has_perp) {
        // Commuting (z-only) generator: exact diagonal phases.
        Vector phases(d);
        for (int i = 0; i < d; ++i)
          phases(i) = std::exp(Complex(0.0, -dt_eff * (spec.omega + wz(k)) * mz(i)));
        u = phases.asDiagonal() * u;
        continue;
      }
      Matrix h = Matrix::Zero(d, d);
      for (int i = 0; i < d; ++i) h(i, i) = (spec.omega + wz(k)) * mz(i);
      const Complex wxy(wx(k), -wy(k));
      for (int i = 0; i + 1 < d; ++i) {
        h(i, i + 1) = wxy * offbase(i);
        h(i + 1, i) = std::conj(h(i, i + 1));
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      Vector phases(d);
      for (int i = 0; i < d; ++i)
        phases(i) = std::exp(Complex(0.0, -dt_eff * es.eigenvalues()(i)));
      u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * u;
    }
    return u * spec.rho0 * u.adjoint();
  };

  const int n_batches = std::min(mc.n_batches, mc.n_traj);
  std::vector<Matrix> batch_sums(n_batches);
  std::vector<int> batch_counts(n_batches, 0);
  const int base = mc.n_traj / n_batches;
  const int rem = mc.n_traj % n_batches;

  parallel_for(
      n_batches,
      [&](int b) {
        const int count = base + (b < rem ? 1 : 0);
        const int first = b * base + std::min(b, rem);
        Matrix sum = Matrix::Zero(d, d);
        for (int k = 0; k < count; ++k)
          sum += run_trajectory(std::uint64_t(first + k));
        batch_sums[b] = std::move(sum);
        batch_counts[b] = count;
      },
      mc.n_threads);

  Matrix total = Matrix::Zero(d, d);
  for (int b = 0; b < n_batches; ++b) total += batch_sums[b];

  MCResult out;
  out.rho_mean = total / double(mc.n_traj);
  out.rho_mean = 0.5 * (out.rho_mean + out.rho_mean.adjoint());

  out.stderr_re = RealMatrix::Zero(d, d);
  out.stderr_im = RealMatrix::Zero(d, d);
  if (n_batches > 1) {
    std::vector<Matrix> means(n_batches);
    Matrix mean_of_means = Matrix::Zero(d, d);
    for (int b = 0; b < n_batches; ++b) {
      means[b] = batch_sums[b] / double(batch_counts[b]);
      mean_of_means += means[b];
    }
    mean_of_means /= double(n_batches);
    RealMatrix var_re = RealMatrix::Zero(d, d);
    RealMatrix var_im = RealMatrix::Zero(d, d);
    for (int b = 0; b < n_batches; ++b) {
      const Matrix dev = means[b] - mean_of_means;
      var_re += dev.real().cwiseAbs2();
      var_im += dev.imag().cwiseAbs2();
    }
    const double norm = 1.0 / (double(n_batches) * (n_batches - 1));
    out.stderr_re = (var_re * norm).cwiseSqrt();
    out.stderr_im = (var_im * norm).cwiseSqrt();
  }
  out.stderr_scale =
      std::max(out.stderr_re.size() ? out.stderr_re.maxCoeff() : 0.0,
               out.stderr_im.size() ? out.stderr_im.maxCoeff() : 0.0);
  return out;
}

}  // namespace spinmetro
