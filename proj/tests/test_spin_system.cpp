#include <doctest.h>

#include "oracles.hpp"
#include "spinmetro/spin_system.hpp"

using namespace spinmetro;

namespace {

double commutator_error(const Matrix& a, const Matrix& b, const Matrix& c) {
  // ||[a,b] - i c|| relative to max(1, ||c||), max-abs norm.
  const Matrix res = a * b - b * a - Complex(0.0, 1.0) * c;
  return max_abs(res) / std::max(1.0, max_abs(c));
}

}  // namespace

TEST_CASE("basis ordering and jz diagonal") {
  for (int n : {1, 2, 4}) {
    const SpinSystem s(n);
    const Matrix z = jz(s);
    for (int i = 0; i <= n; ++i) {
      CHECK(z(i, i).real() == doctest::Approx(s.j() - i).epsilon(1e-15));
    }
    CHECK(std::abs(z.trace()) < 1e-14);
  }
  CHECK(SpinSystem(2).m(0) == 1.0);
  CHECK(SpinSystem(2).m(2) == -1.0);
  CHECK_THROWS_AS(SpinSystem(0), std::invalid_argument);
}

TEST_CASE("ladder matrix elements") {
  const SpinSystem s1(1);
  CHECK(jplus(s1)(0, 1).real() == doctest::Approx(1.0));

  const SpinSystem s2(2);
  // <1,1|J+|1,0>: row m=1 (index 0), column m=0 (index 1)
  CHECK(jplus(s2)(0, 1).real() == doctest::Approx(std::sqrt(2.0)));
  const Matrix comm = jplus(s2) * jminus(s2) - jminus(s2) * jplus(s2);
  CHECK(max_abs(comm - 2.0 * jz(s2)) < tol::algebra);
}

TEST_CASE("jx jy for a single qubit are half Paulis") {
  const SpinSystem s(1);
  Matrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  CHECK(max_abs(jx(s) - 0.5 * sx) < 1e-15);
  CHECK(max_abs(jy(s) - 0.5 * sy) < 1e-15);
}

TEST_CASE("su(2) relations and Casimir across N") {
  for (int n : {1, 2, 5, 20, 200}) {
    const SpinSystem s(n);
    const Matrix x = jx(s), y = jy(s), z = jz(s);
    CHECK(commutator_error(x, y, z) < tol::algebra);
    CHECK(commutator_error(y, z, x) < tol::algebra);
    CHECK(commutator_error(z, x, y) < tol::algebra);
    const Matrix casimir = x * x + y * y + z * z;
    const double jj = s.j() * (s.j() + 1.0);
    CHECK(max_abs(casimir - jj * Matrix::Identity(s.dim(), s.dim())) /
              std::max(1.0, jj) <
          tol::algebra);
  }
}

TEST_CASE("jx eigenvalues match jz spectrum by rotation invariance") {
  const SpinSystem s(2);
  const Eigensystem es = hermitian_eigendecomposition(jx(s));
  CHECK(es.values(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.values(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(es.values(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigendecomposition contract") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(2, 2) = -1.0;
  const Eigensystem es = hermitian_eigendecomposition(d);
  CHECK(es.values(0) == doctest::Approx(-1.0));
  CHECK(es.values(2) == doctest::Approx(1.0));

  std::mt19937_64 gen(7);
  const Matrix a = testing::random_hermitian(5, gen);
  const Eigensystem ra = hermitian_eigendecomposition(a);
  const Matrix rebuilt =
      ra.vectors * ra.values.cast<Complex>().asDiagonal() * ra.vectors.adjoint();
  CHECK(max_abs(rebuilt - a) < tol::eig_roundtrip);
  const Matrix gram = ra.vectors.adjoint() * ra.vectors;
  CHECK(max_abs(gram - Matrix::Identity(5, 5)) < tol::eig_roundtrip);

  Matrix bad = a;
  bad(0, 1) += Complex(0.1, 0.2);
  CHECK_THROWS_AS(hermitian_eigendecomposition(bad), std::invalid_argument);
}

TEST_CASE("eigendecomposition round trip at N = 200") {
  const SpinSystem s(200);
  const Matrix x = jx(s);
  const Eigensystem es = hermitian_eigendecomposition(x);
  const Matrix rebuilt =
      es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  CHECK(max_abs(rebuilt - x) / max_abs(x) < tol::eig_roundtrip);
}

TEST_CASE("unitary from generator") {
  const SpinSystem s(1);
  Matrix sx(2, 2);
  sx << 0, 1, 1, 0;
  const Matrix u = unitary_from_generator(jx(s), 3.14159265358979323846);
  CHECK(max_abs(u - Complex(0.0, -1.0) * sx) < 1e-12);

  std::mt19937_64 gen(3);
  const Matrix h = testing::random_hermitian(6, gen);
  CHECK(max_abs(unitary_from_generator(h, 0.0) - Matrix::Identity(6, 6)) <
        1e-14);
  const Matrix u2 = unitary_from_generator(h, 0.7);
  CHECK(max_abs(u2 * u2.adjoint() - Matrix::Identity(6, 6)) < tol::eig_roundtrip);

  const SpinSystem s4(4);
  const double theta = 0.37;
  const Matrix uz = unitary_from_generator(jz(s4), theta);
  for (int i = 0; i < s4.dim(); ++i) {
    const Complex expected = std::exp(Complex(0.0, -theta * s4.m(i)));
    CHECK(std::abs(uz(i, i) - expected) < 1e-15);
  }
}

TEST_CASE("density validation") {
  const SpinSystem s(3);
  Matrix rho = Matrix::Identity(s.dim(), s.dim()) / double(s.dim());
  CHECK_NOTHROW(require_density(rho));
  rho(0, 0) += 0.5;
  CHECK_THROWS_AS(require_density(rho), std::invalid_argument);
}
