#include <doctest.h>

#include "oracles.hpp"
#include "spinmetro/evolution.hpp"
#include "spinmetro/states.hpp"

using namespace spinmetro;

namespace {

Matrix unitary_reference(const SpinSystem& s, const Matrix& rho0, double omega,
                         double tau) {
  const Matrix u = unitary_from_generator(jz(s), omega * tau);
  return u * rho0 * u.adjoint();
}

}  // namespace

TEST_CASE("analytic engine reduces to unitary evolution without noise") {
  const SpinSystem s(3);
  const TensorBasis basis(s);
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix rho0 = testing::random_density(s.dim(), gen);
    const EvolutionSpec spec{s, rho0, NoiseModel::none(), 1.3, 0.8};
    const Matrix evolved = evolve_analytic(spec, basis);
    CHECK(max_abs(evolved - unitary_reference(s, rho0, 1.3, 0.8)) < 1e-10);
  }
}

TEST_CASE("NOON corner phases in the unitary limit") {
  const SpinSystem s(4);
  const TensorBasis basis(s);
  const double omega = 0.9, tau = 0.6;
  const EvolutionSpec spec{s, make_noon(s), NoiseModel::none(), omega, tau};
  const Matrix evolved = evolve_analytic(spec, basis);
  const Complex expected = 0.5 * std::exp(Complex(0.0, -4.0 * omega * tau));
  CHECK(std::abs(evolved(0, 4) - expected) < 1e-12);
  CHECK(std::abs(std::abs(evolved(0, 4)) - 0.5) < 1e-12);
  CHECK(std::abs(evolved(0, 0) - 0.5) < 1e-12);
}

TEST_CASE("isotropic white noise damps ranks as exp(-r(r+1) t/T)") {
  const SpinSystem s(4);
  const TensorBasis basis(s);
  std::mt19937_64 gen(17);
  const Matrix rho0 = testing::random_density(s.dim(), gen);
  const double big_t = 2.0, tau = 0.3;
  const EvolutionSpec spec{s, rho0, NoiseModel::white(1.0 / big_t, 1.0 / big_t),
                           0.0, tau};
  const Matrix evolved = evolve_analytic(spec, basis);
  const TensorCoefficients c0 = decompose(basis, rho0);
  const TensorCoefficients ct = decompose(basis, evolved);
  for (int rank = 0; rank <= s.n(); ++rank) {
    const double damp = std::exp(-rank * (rank + 1.0) * tau / big_t);
    for (int m = -rank; m <= rank; ++m)
      CHECK(std::abs(ct.at(rank, m) - damp * c0.at(rank, m)) < 1e-11);
  }
}

TEST_CASE("long-time isotropic OU evolution reaches the mixed state") {
  const SpinSystem s(4);
  const TensorBasis basis(s);
  const EvolutionSpec spec{s, make_noon(s),
                           NoiseModel::ornstein_uhlenbeck(1.0, 1.0, 1.0, 1.0),
                           0.0, 60.0};
  const Matrix evolved = evolve_analytic(spec, basis);
  CHECK(max_abs(evolved - Matrix::Identity(s.dim(), s.dim()) / double(s.dim())) <
        1e-10);
}

TEST_CASE("analytic derivative matches finite differences") {
  const SpinSystem s(20);
  const TensorBasis basis(s);
  const NoiseModel noise = NoiseModel::ornstein_uhlenbeck(1.0, 1.0, 0.4, 1.5);
  const double tau = 0.4;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> gamma_dist(-3.0, 0.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix rho0 = make_bh_ground(s, gamma_dist(gen));
    const double omega = 2.0 + trial;
    const EvolutionSpec spec{s, rho0, noise, omega, tau};
    const Matrix analytic = evolve_analytic_derivative(spec, basis);
    const double step = 1e-5 / tau;
    const Matrix fd = testing::central_difference(
        [&](double w) {
          EvolutionSpec sp = spec;
          sp.omega = w;
          return evolve_analytic(sp, basis);
        },
        omega, step);
    CHECK(max_abs(analytic - fd) < 1e-6);
    CHECK(std::abs(analytic.trace()) < 1e-12);
    CHECK(is_hermitian(analytic));
  }
}

TEST_CASE("NOON derivative corner magnitude is N tau / 2") {
  const SpinSystem s(2);
  const TensorBasis basis(s);
  const double tau = 0.7;
  const EvolutionSpec spec{s, make_noon(s), NoiseModel::none(), 1.1, tau};
  const Matrix d = evolve_analytic_derivative(spec, basis);
  CHECK(std::abs(d(0, 2)) == doctest::Approx(tau).epsilon(1e-12));
}

TEST_CASE("white noise derivative carries only the phase term") {
  const SpinSystem s(3);
  const TensorBasis basis(s);
  const double tau = 0.5;
  std::mt19937_64 gen(3);
  const Matrix rho0 = testing::random_density(s.dim(), gen);
  const EvolutionSpec spec{s, rho0, NoiseModel::white(0.8, 0.3), 2.0, tau};
  const Matrix evolved = evolve_analytic(spec, basis);
  const Matrix d = evolve_analytic_derivative(spec, basis);
  const TensorCoefficients ct = decompose(basis, evolved);
  const TensorCoefficients cd = decompose(basis, d);
  for (int rank = 0; rank <= s.n(); ++rank)
    for (int m = -rank; m <= rank; ++m)
      CHECK(std::abs(cd.at(rank, m) -
                     Complex(0.0, -double(m) * tau) * ct.at(rank, m)) < 1e-12);
}

TEST_CASE("purity is non-increasing for isotropic noise") {
  const SpinSystem s(6);
  const TensorBasis basis(s);
  const NoiseModel iso = NoiseModel::ornstein_uhlenbeck(1.0, 1.0, 1.0, 1.0);
  for (double omega : {0.0, 1.0}) {
    double prev = 1.0 + 1e-12;
    for (double t : {0.0, 0.2, 0.5, 1.0, 2.0, 4.0}) {
      const EvolutionSpec spec{s, make_noon(s), iso, omega, t};
      const double p = purity(evolve_analytic(spec, basis));
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
  }
}

TEST_CASE("positivity guard clips rounding noise and rejects breakdowns") {
  const SpinSystem s(2);
  const TensorBasis basis(s);
  // evolving a valid state never goes negative for these models
  const EvolutionSpec spec{s, make_noon(s),
                           NoiseModel::ornstein_uhlenbeck(2.0, 1.0), 3.0, 1.5};
  const Matrix evolved = evolve_analytic(spec, basis);
  const Eigensystem es = hermitian_eigendecomposition(evolved);
  CHECK(es.values.minCoeff() >= -1e-14);
  CHECK(std::abs(evolved.trace() - Complex(1.0)) < 1e-12);
}

TEST_CASE("monte carlo equals unitary evolution without noise") {
  const SpinSystem s(3);
  const TensorBasis basis(s);
  std::mt19937_64 gen(9);
  const Matrix rho0 = testing::random_density(s.dim(), gen);
  const EvolutionSpec spec{s, rho0, NoiseModel::none(), 1.7, 0.9};
  MCConfig mc;
  mc.n_traj = 1;
  mc.n_batches = 1;
  const MCResult res = evolve_montecarlo(spec, mc);
  CHECK(max_abs(res.rho_mean - unitary_reference(s, rho0, 1.7, 0.9)) < 1e-12);
  CHECK(res.stderr_scale == 0.0);
}

TEST_CASE("monte carlo validates the commuting z-only case") {
  const SpinSystem s(4);
  const TensorBasis basis(s);
  const NoiseModel z_only = NoiseModel::ornstein_uhlenbeck(0.0, 1.0, 1.0, 1.0);
  const EvolutionSpec spec{s, make_noon(s), z_only, 1.0, 1.0};
  MCConfig mc;
  mc.n_traj = 4000;
  mc.seed = 7;
  const MCResult res = evolve_montecarlo(spec, mc);
  const Matrix ana = evolve_analytic(spec, basis);
  // corner magnitude 0.5 exp(-N^2 Gamma_0)
  const double gamma0 = decay_rates(z_only, 1.0, 1.0).gamma0;
  const double expected = 0.5 * std::exp(-16.0 * gamma0);
  CHECK(std::abs(ana(0, 4)) == doctest::Approx(expected).epsilon(1e-10));
  const Matrix dev = res.rho_mean - ana;
  for (int a = 0; a < s.dim(); ++a)
    for (int b = 0; b < s.dim(); ++b) {
      CHECK(std::abs(dev(a, b).real()) <=
            3.0 * std::max(res.stderr_re(a, b), 1e-12));
      CHECK(std::abs(dev(a, b).imag()) <=
            3.0 * std::max(res.stderr_im(a, b), 1e-12));
    }
  // diagonal is deterministic under commuting noise
  for (int a = 0; a < s.dim(); ++a)
    CHECK(std::abs(dev(a, a)) < 1e-13);
}

TEST_CASE("monte carlo tracks the analytic engine for isotropic noise") {
  const SpinSystem s(4);
  const TensorBasis basis(s);
  const NoiseModel iso = NoiseModel::ornstein_uhlenbeck(1.0, 1.0, 1.0, 1.0);
  const EvolutionSpec spec{s, make_noon(s), iso, 1.0, 0.25};
  MCConfig mc;
  mc.n_traj = 3000;
  mc.seed = 7;
  const MCResult res = evolve_montecarlo(spec, mc);
  const Matrix ana = evolve_analytic(spec, basis);
  CHECK(trace_distance(res.rho_mean, ana) <=
        std::max(0.02, 5.0 * res.stderr_scale));
  CHECK(std::abs(res.rho_mean.trace() - Complex(1.0)) < 1e-12);
  CHECK(is_hermitian(res.rho_mean));
}

TEST_CASE("monte carlo stderr shrinks like 1/sqrt(n_traj)") {
  const SpinSystem s(2);
  const NoiseModel iso = NoiseModel::ornstein_uhlenbeck(1.0, 1.0, 1.0, 1.0);
  const EvolutionSpec spec{s, make_noon(s), iso, 0.5, 0.5};
  MCConfig mc;
  mc.n_traj = 2000;
  mc.seed = 31;
  const double se1 = evolve_montecarlo(spec, mc).stderr_scale;
  mc.n_traj = 4000;
  const double se2 = evolve_montecarlo(spec, mc).stderr_scale;
  const double ratio = se1 / se2;
  CHECK(ratio > std::sqrt(2.0) * 0.8);
  CHECK(ratio < std::sqrt(2.0) * 1.2);
}

TEST_CASE("monte carlo result is independent of the worker count") {
  const SpinSystem s(3);
  const NoiseModel iso = NoiseModel::ornstein_uhlenbeck(1.0, 1.0, 0.5, 1.0);
  const EvolutionSpec spec{s, make_noon(s), iso, 1.0, 0.3};
  MCConfig mc;
  mc.n_traj = 200;
  mc.seed = 99;
  mc.n_threads = 1;
  const MCResult a = evolve_montecarlo(spec, mc);
  mc.n_threads = 4;
  const MCResult b = evolve_montecarlo(spec, mc);
  CHECK(max_abs(a.rho_mean - b.rho_mean) == 0.0);
  CHECK(a.stderr_scale == b.stderr_scale);
}

TEST_CASE("monte carlo rejects bad configurations") {
  const SpinSystem s(2);
  const NoiseModel iso = NoiseModel::ornstein_uhlenbeck(1.0, 1.0, 1.0, 1.0);
  const EvolutionSpec spec{s, make_noon(s), iso, 10.0, 0.5};
  MCConfig mc;
  mc.dt = 0.2;  // violates tau_c / 20
  CHECK_THROWS_AS(evolve_montecarlo(spec, mc), std::invalid_argument);
  mc.dt = 0.04;  // violates the rotation bound at Omega = 10
  CHECK_THROWS_AS(evolve_montecarlo(spec, mc), std::invalid_argument);
  const EvolutionSpec white_spec{s, make_noon(s), NoiseModel::white(1.0), 1.0, 0.5};
  MCConfig ok;
  CHECK_THROWS_AS(evolve_montecarlo(white_spec, ok), std::invalid_argument);
}
