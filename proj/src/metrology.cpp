#include "spinmetro/metrology.hpp"

#include <cmath>
#include <vector>

namespace spinmetro {

namespace {

constexpr double kPi = 3.14159265358979323846;

// <sin^2 u / (1 + w cos u)> over a fringe period = (1 - sqrt(1-w^2)) / w^2,
// with the small-w series where the closed form cancels.
double fringe_sin2_avg(double w) {
  const double w2 = w * w;
  if (std::abs(w) < 1e-4) return 0.5 + w2 / 8.0 + w2 * w2 / 16.0;
  return (1.0 - std::sqrt(std::max(0.0, 1.0 - w2))) / w2;
}

struct FringeInputs {
  double n = 0;
  double x0 = 0;       // |<J+>_0|
  Complex p0{0.0};     // <J+^2>_0 rotated into the fringe frame
  double jzz0 = 0;     // <Jz^2>_0
  double c = 1;        // one-body contrast e^{-Gamma_0 - Gamma_+}
  double alpha = 0;    // tau - dGamma_-
  double beta = 0;     // dGamma_+
  double g0 = 0, gp = 0;
};

FringeInputs fringe_inputs(const EvolutionSpec& spec) {
  const SpinMoments mom = initial_moments(spec.system, spec.rho0);
  const DecayRates r = decay_rates(spec.noise, spec.tau, spec.omega);
  FringeInputs f;
  f.n = spec.system.n();
  f.x0 = std::hypot(mom.jx, mom.jy);
  const double chi = f.x0 > 0.0 ? std::atan2(mom.jy, mom.jx) : 0.0;
  const Complex jp2(mom.jxx - mom.jyy, 2.0 * mom.xy_sym);
  f.p0 = jp2 * std::exp(Complex(0.0, -2.0 * chi));
  f.jzz0 = mom.jzz;
  f.c = std::exp(-r.gamma0 - r.gamma_plus);
  f.alpha = spec.tau - r.dgamma_minus_domega;
  f.beta = r.dgamma_plus_domega;
  f.g0 = r.gamma0;
  f.gp = r.gamma_plus;
  return f;
}

}  // namespace

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kQfiExact: return "qfi_exact";
    case Protocol::kQfiNoonApprox: return "qfi_noon_approx";
    case Protocol::kQfiWhitenoise: return "qfi_whitenoise";
    case Protocol::kCfiImbalance: return "cfi_imbalance";
    case Protocol::kCfiImbalancePulsed: return "cfi_imbalance_pulsed";
    case Protocol::kFtildeDensity: return "ftilde_density";
    case Protocol::kSnl: return "snl";
    case Protocol::kSymmetryBound: return "symmetry_bound";
  }
  return "unknown";
}

double qfi_exact(const EvolutionSpec& spec, const TensorBasis& basis) {
  const Matrix rho = evolve_analytic(spec, basis);
  const Matrix drho = evolve_analytic_derivative(spec, basis);
  const Eigensystem es = hermitian_eigendecomposition(rho);
  const Matrix d = es.vectors.adjoint() * drho * es.vectors;
  const int dim = spec.system.dim();
  double f = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      const double denom = es.values(i) + es.values(k);
      if (denom < tol::eigenvalue_cutoff) continue;
      f += 2.0 * std::norm(d(i, k)) / denom;
    }
  }
  return f;
}

double qfi_whitenoise(int n, double tau, double big_t) {
  if (big_t <= 0.0) throw std::invalid_argument("qfi_whitenoise: T must be > 0");
  const double nn = n;
  return nn * nn * tau * tau * std::exp(-2.0 * nn * (nn + 1.0) * tau / big_t);
}

double qfi_noon_approx(const EvolutionSpec& spec) {
  const DecayRates r = decay_rates(spec.noise, spec.tau, spec.omega);
  const double n = spec.system.n();
  if (n * r.gamma_plus >= 0.5)
    throw NumericalError("qfi_noon_approx: outside validity regime (N Gamma_+ >= 0.5)");
  const double alpha = spec.tau - r.dgamma_minus_domega;
  const double damping =
      std::exp(-2.0 * n * n * r.gamma0 - 2.0 * n * r.gamma_plus);
  double f = n * n * alpha * alpha * damping / (1.0 - n * r.gamma_plus);
  if (r.gamma_plus > 0.0)
    f += n * r.dgamma_plus_domega * r.dgamma_plus_domega / r.gamma_plus;
  return f;
}

double snl_bound(int n, double tau) { return double(n) * tau * tau; }

double symmetry_bound(const Matrix& rho0, const TensorBasis& basis, double tau) {
  const SpinSystem& s = basis.system();
  const Eigensystem es = hermitian_eigendecomposition(rho0);
  double bound = 0.0;
  for (int a = 0; a < s.dim(); ++a) {
    const double p = es.values(a);
    if (p < tol::eigenvalue_cutoff) continue;
    const Vector psi = es.vectors.col(a);
    double sum = 0.0;
    for (int m = 1; m <= s.n(); ++m) {
      for (int rank = m; rank <= s.n(); ++rank) {
        const Vector& band = basis.band(rank, m);
        Complex val(0.0);
        for (int t = 0; t < band.size(); ++t)
          val += std::conj(psi(t)) * band(t) * psi(t + m);
        sum += double(m) * m * std::norm(val);
      }
    }
    bound += p * sum;
  }
  return 4.0 * bound * tau * tau;
}

double cfi_imbalance(const EvolutionSpec& spec, const TensorBasis& basis,
                     Pulse pulse) {
  Matrix rho = evolve_analytic(spec, basis);
  Matrix drho = evolve_analytic_derivative(spec, basis);
  if (pulse == Pulse::kHalfPiX) {
    const Matrix r = unitary_from_generator(jx(spec.system), 0.5 * kPi);
    rho = r * rho * r.adjoint();
    drho = r * drho * r.adjoint();
  }
  double f = 0.0;
  for (int i = 0; i < spec.system.dim(); ++i) {
    const double p = rho(i, i).real();
    if (p < tol::eigenvalue_cutoff) continue;
    const double dp = drho(i, i).real();
    f += dp * dp / p;
  }
  return f;
}

double ftilde_density(const EvolutionSpec& spec) {
  spec.validate();
  const FringeInputs in = fringe_inputs(spec);
  const double n = in.n;
  if (in.x0 <= 0.0) return 0.0;  // fringe-free density carries no phase signal

  double w = 2.0 * in.c * in.x0 / n;
  // <Jx> of a maximal-Jx eigenstate lands at N/2 only up to rounding; snap the
  // noiseless-contrast edge so the w -> 1 limit is regular.
  if (1.0 - w <= 1e-12 && std::abs(in.beta) <= 1e-12) w = 1.0;
  const double d = std::sqrt(std::max(0.0, 1.0 - w * w));
  const double iss = fringe_sin2_avg(w);

  // F1 = N (1-D) (alpha^2 + beta^2 / D) written through the fringe averages.
  double f1 = n * w * w * iss * in.alpha * in.alpha;
  double a0 = 0.0, ac = 0.0;
  const double as = in.alpha * iss;
  if (in.beta != 0.0) {
    if (d <= 0.0)
      throw NumericalError("ftilde_density: degenerate contrast with nonzero dGamma_+");
    f1 += n * w * w * (iss / d) * in.beta * in.beta;
    a0 = in.beta * w * iss / d;
    ac = -in.beta * iss / d;
  }
  if (f1 <= 0.0) return 0.0;

  // Evolved two-body inputs, exact in the tensor solution:
  // J+^2 is the rank-2 highest-weight tensor, and Jz^2 splits into ranks 0, 2.
  const double jj = 0.25 * n * (n + 2.0);  // j(j+1)
  const Complex p_tau = std::exp(-4.0 * in.g0 - 2.0 * in.gp) * in.p0;
  const double jzz_tau = jj / 3.0 + std::exp(-6.0 * in.gp) * (in.jzz0 - jj / 3.0);
  const double lambda = 0.25 * n * n - jzz_tau;

  const double q =
      w * w *
      (n * (n - 1.0) * a0 * a0 + 2.0 * n * (n - 1.0) * w * a0 * ac +
       2.0 * p_tau.real() * (ac * ac - as * as) + 4.0 * p_tau.imag() * as * ac +
       2.0 * lambda * (ac * ac + as * as));

  const double denom = f1 + q;
  if (denom <= 0.0)
    throw NumericalError(
        "ftilde_density: estimator variance not resolvable at this order");
  return f1 * f1 / denom;
}

double ftilde_density_oracle(const EvolutionSpec& spec, const TensorBasis& basis,
                             const FtildeOracleConfig& config) {
  spec.validate();
  if (config.k_sigma < 20.0)
    throw std::invalid_argument("ftilde_density_oracle: need k * width >= 20");
  const SpinSystem& s = spec.system;
  const double n = s.n();

  const Matrix rho = evolve_analytic(spec, basis);
  const Matrix drho = evolve_analytic_derivative(spec, basis);
  const Matrix jp = jplus(s);
  const Matrix z = jz(s);
  const Complex c1 = expectation(jp, rho);        // <a+ b>_tau
  const Complex dc1 = expectation(jp, drho);
  const Complex c2 = expectation(jp * jp, rho);   // <a+ a+ b b>_tau = conj of it
  const double nanb = 0.25 * n * n - real_expectation(z * z, rho);

  if (std::abs(c1) < 1e-14 * n && std::abs(dc1) < 1e-14 * n) return 0.0;

  const double sigma = 1.0;
  const double k = config.k_sigma / sigma;
  const double span = config.span_sigmas * sigma;

  const auto env = [&](double x) {
    return std::exp(-x * x / (2.0 * sigma * sigma)) /
           (sigma * std::sqrt(2.0 * kPi));
  };
  const auto density = [&](double x) {
    return env(x) * (n + 2.0 * (std::exp(Complex(0.0, -k * x)) * c1).real());
  };
  const auto ddensity = [&](double x) {
    return env(x) * 2.0 * (std::exp(Complex(0.0, -k * x)) * dc1).real();
  };

  const auto simpson_weight = [](int i, int last) {
    if (i == 0 || i == last) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
  };

  const auto f1_at = [&](int points) {
    const double h = 2.0 * span / (points - 1);
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
      const double x = -span + i * h;
      const double rx = density(x);
      if (rx <= 0.0) continue;
      const double dx = ddensity(x);
      acc += simpson_weight(i, points - 1) * dx * dx / rx;
    }
    return acc * h / 3.0;
  };

  // Q = integral of (drho/rho)(x) (drho/rho)(y) [G2(x,y) - rho(x)rho(y)],
  // with G2 expanded over the two-mode second moments.
  const auto q_at = [&](int points) {
    const double h = 2.0 * span / (points - 1);
    std::vector<double> rx(points), fx(points), ex_c1(points), wgt(points);
    std::vector<Complex> ex(points);
    for (int i = 0; i < points; ++i) {
      const double x = -span + i * h;
      rx[i] = density(x);
      fx[i] = env(x);
      ex[i] = std::exp(Complex(0.0, -k * x));
      ex_c1[i] = (ex[i] * c1).real();
      wgt[i] = rx[i] > 0.0
                   ? simpson_weight(i, points - 1) * ddensity(x) / rx[i]
                   : 0.0;
    }
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
      if (wgt[i] == 0.0) continue;
      double inner = 0.0;
      for (int jdx = 0; jdx < points; ++jdx) {
        if (wgt[jdx] == 0.0) continue;
        const double g2 =
            fx[i] * fx[jdx] *
                (n * (n - 1.0) + 2.0 * (n - 1.0) * (ex_c1[i] + ex_c1[jdx]) +
                 2.0 * (ex[i] * ex[jdx] * c2).real() +
                 2.0 * nanb * (ex[i] * std::conj(ex[jdx])).real()) -
            rx[i] * rx[jdx];
        inner += wgt[jdx] * g2;
      }
      acc += wgt[i] * inner;
    }
    return acc * h * h / 9.0;
  };

  const auto ftilde_at = [&](int p1, int p2) {
    const double f1 = f1_at(p1);
    if (f1 <= 0.0) return 0.0;
    const double q = q_at(p2);
    const double denom = f1 + q;
    if (denom <= 0.0)
      throw NumericalError("ftilde_density_oracle: non-positive estimator variance");
    return f1 * f1 / denom;
  };

  const double coarse = ftilde_at(config.points, config.points_2d);
  const double fine = ftilde_at(2 * config.points - 1, 2 * config.points_2d - 1);
  const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
  if (std::abs(fine - coarse) > config.convergence * scale)
    throw NumericalError("ftilde_density_oracle: quadrature did not converge");
  return fine;
}

}  // namespace spinmetro
