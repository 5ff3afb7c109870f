#include <doctest.h>

#include "oracles.hpp"
#include "spinmetro/states.hpp"
#include "spinmetro/tensor_basis.hpp"

using namespace spinmetro;

TEST_CASE("NOON projector structure") {
  const SpinSystem s(2);
  const Matrix rho = make_noon(s);
  CHECK(rho(0, 0).real() == doctest::Approx(0.5));
  CHECK(rho(0, 2).real() == doctest::Approx(0.5));
  CHECK(rho(2, 0).real() == doctest::Approx(0.5));
  CHECK(rho(2, 2).real() == doctest::Approx(0.5));
  CHECK(max_abs(rho) == doctest::Approx(0.5));
  CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(real_expectation(jz(s), rho)) < 1e-14);
  int nonzero = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      if (std::abs(rho(i, k)) > 0.0) ++nonzero;
  CHECK(nonzero == 4);
}

TEST_CASE("CSS is the maximal-Jx product state") {
  for (int n : {2, 10, 100}) {
    const SpinSystem s(n);
    const Matrix rho = make_css(s);
    const SpinMoments m = initial_moments(s, rho);
    CHECK(std::abs(m.jx - 0.5 * n) < 1e-10);
    CHECK(std::abs(m.jy) < 1e-12);
    CHECK(std::abs(m.jyy - 0.25 * n) < 1e-9);
    CHECK(std::abs(m.jzz - 0.25 * n) < 1e-9);
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("BH gamma = 0 ground state reproduces the CSS") {
  const SpinSystem s(10);
  const Matrix ground = make_bh_ground(s, 0.0);
  const SpinMoments m = initial_moments(s, ground);
  CHECK(std::abs(m.jx - 5.0) < 1e-10);
  CHECK(max_abs(ground - make_css(s)) < 1e-10);
}

TEST_CASE("BH ground state approaches NOON for strong attraction") {
  const SpinSystem s(10);
  const Matrix ground = make_bh_ground(s, -50.0);
  const Matrix noon = make_noon(s);
  // fidelity with the NOON projector
  const double fid = (ground * noon).trace().real();
  CHECK(fid >= 0.99);
}

TEST_CASE("BH ground states are path symmetric and parity even") {
  const SpinSystem s(11);
  for (double g : {0.0, -0.05, -0.3, -1.0, -4.0, -40.0}) {
    const Matrix rho = make_bh_ground(s, g);
    CHECK(std::abs(real_expectation(jz(s), rho)) < 1e-10);
    // reflected state equals itself
    Matrix reflected(s.dim(), s.dim());
    for (int i = 0; i < s.dim(); ++i)
      for (int k = 0; k < s.dim(); ++k)
        reflected(i, k) = rho(s.dim() - 1 - i, s.dim() - 1 - k);
    CHECK(max_abs(reflected - rho) < 1e-10);
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(make_bh_ground(s, 0.5), std::invalid_argument);
}

TEST_CASE("BH ground energy is non-increasing in gamma") {
  const SpinSystem s(12);
  double prev = std::numeric_limits<double>::infinity();
  for (double g : {0.0, -0.1, -0.5, -1.0, -2.0, -10.0, -100.0}) {
    const double e = bh_ground_energy(s, g);
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
}

TEST_CASE("tensor-weight support grows monotonically toward NOON") {
  const SpinSystem s(10);
  const TensorBasis basis(s);
  int prev_support = 0;
  for (double g : {0.0, -0.3, -1.0, -3.0, -10.0, -50.0}) {
    const RealVector km = km_distribution(basis, make_bh_ground(s, g));
    int support = 0;
    for (int m = 0; m <= s.n(); ++m)
      if (km(m) > 1e-6 * km(0)) support = m;
    CHECK(support >= prev_support);
    prev_support = support;
  }
  CHECK(prev_support == s.n());
}

TEST_CASE("moments of simple states") {
  const SpinSystem s(6);
  const Matrix mixed = Matrix::Identity(s.dim(), s.dim()) / double(s.dim());
  const SpinMoments m = initial_moments(s, mixed);
  CHECK(std::abs(m.jx) < 1e-14);
  CHECK(std::abs(m.jy) < 1e-14);
  CHECK(std::abs(m.jz) < 1e-14);

  const SpinMoments noon = initial_moments(s, make_noon(s));
  CHECK(std::abs(noon.jx) < 1e-14);
  CHECK(noon.jzz == doctest::Approx(9.0));  // (N/2)^2
  CHECK(noon.jxx <= s.j() * s.j() + 1e-12);
}
