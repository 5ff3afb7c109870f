#pragma once

#include "spinmetro/types.hpp"

namespace spinmetro {

// N bosonic qubits restricted to the permutation-symmetric sector: a single
// spin j = N/2 in the Dicke basis |j,m>.
//
// Basis ordering contract, shared by every module: index i holds m = j - i,
// so index 0 <-> m = +j and index N <-> m = -j.
class SpinSystem {
 public:
  explicit SpinSystem(int n_particles);

  int n() const { return n_; }
  int dim() const { return n_ + 1; }
  double j() const { return 0.5 * n_; }
  double m(int index) const { return j() - index; }

  // <j,m+1|J+|j,m> and <j,m-1|J-|j,m>
  double raise_factor(double m) const;
  double lower_factor(double m) const;

  bool operator==(const SpinSystem& other) const { return n_ == other.n_; }
  bool operator!=(const SpinSystem& other) const { return n_ != other.n_; }

 private:
  int n_;
};

// Collective angular-momentum operators, dense (dim x dim).
Matrix jz(const SpinSystem& s);
Matrix jplus(const SpinSystem& s);
Matrix jminus(const SpinSystem& s);
Matrix jx(const SpinSystem& s);
Matrix jy(const SpinSystem& s);

bool is_hermitian(const Matrix& a, double rel_tol = tol::hermiticity);
void require_hermitian(const Matrix& a, double rel_tol = tol::hermiticity);
// Unit trace and spectrum bounded below by -tol::density_negativity.
void require_density(const Matrix& rho);

struct Eigensystem {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

// Rejects input whose anti-hermitian part exceeds the tolerance.
Eigensystem hermitian_eigendecomposition(const Matrix& a,
                                         double rel_tol = tol::hermiticity);

// exp(-i t h) for hermitian h, via eigendecomposition. A diagonal generator
// short-circuits to exact per-entry phases.
Matrix unitary_from_generator(const Matrix& h, double t);

Complex expectation(const Matrix& op, const Matrix& rho);  // Tr(op rho)
double real_expectation(const Matrix& op, const Matrix& rho);

double purity(const Matrix& rho);                          // Tr(rho^2)
double trace_distance(const Matrix& a, const Matrix& b);   // (1/2)||a-b||_1
double fidelity_with_pure(const Matrix& rho, const Vector& psi);

}  // namespace spinmetro
