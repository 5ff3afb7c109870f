#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "spinmetro/spin_system.hpp"

namespace spinmetro {

// A weight-m operator is supported on a single (off-)diagonal of the Dicke
// matrix: entry (t, t+m) for m >= 0, entry (t-m, t) for m < 0 -- exactly what
// Matrix::diagonal(m) addresses. Bands are stored as vectors of length
// dim - |m| indexed the same way.
int band_length(const SpinSystem& s, int m);
Complex band_at_column(const Vector& band, int m, int column);
Matrix band_to_matrix(const SpinSystem& s, const Vector& band, int m);

// Commutators with the ladder operators map a weight-m band to weight m+-1.
Vector ad_jplus(const SpinSystem& s, const Vector& band, int m);
Vector ad_jminus(const SpinSystem& s, const Vector& band, int m);

// Orthonormal spherical-tensor operator basis T^(r)_m, r = 0..N, m = -r..r,
// defined by
//   [Jz, T^(r)_m] = m T^(r)_m
//   [J+-, T^(r)_m] = sqrt(r(r+1) - m(m+-1)) T^(r)_{m+-1}
//   Tr(T^(r)+_m T^(r')_m') = delta_rr' delta_mm'.
//
// Phase convention: T^(r)_r is the unit Hilbert-Schmidt-norm multiple of
// (J+)^r with positive entries; lower weights follow from the J- recurrence.
// Under this convention (T^(r)_m)^dagger = (-1)^m T^(r)_{-m}. Any per-rank
// unit-modulus rephasing also satisfies the defining conditions; physical
// outputs must not depend on it (see the block_phases constructor, used to
// assert exactly that).
//
// Rank blocks are built lazily, each exactly once; reads are thread-safe.
class TensorBasis {
 public:
  explicit TensorBasis(const SpinSystem& system);
  TensorBasis(const SpinSystem& system, std::vector<Complex> block_phases);

  const SpinSystem& system() const { return system_; }

  // Band of T^(rank)_m along diagonal(m).
  const Vector& band(int rank, int m) const;
  // Dense realization, built on demand.
  Matrix tensor(int rank, int m) const;

 private:
  void build_block(int rank) const;

  SpinSystem system_;
  std::vector<Complex> block_phases_;
  mutable std::vector<std::vector<Vector>> blocks_;
  mutable std::vector<std::unique_ptr<std::once_flag>> built_;
};

// Coefficients c^(r)_m = Tr(T^(r)+_m rho) of a matrix in the tensor basis.
// For hermitian rho, c^(r)_{-m} = (-1)^m conj(c^(r)_m).
class TensorCoefficients {
 public:
  explicit TensorCoefficients(const SpinSystem& system);

  const SpinSystem& system() const { return system_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  Complex at(int rank, int m) const { return coeffs_(index(rank, m)); }
  Complex& at(int rank, int m) { return coeffs_(index(rank, m)); }

  const Vector& raw() const { return coeffs_; }
  Vector& raw() { return coeffs_; }

 private:
  int index(int rank, int m) const;

  SpinSystem system_;
  Vector coeffs_;  // (N+1)^2 entries, rank^2 + rank + m layout
};

// Streams over rank blocks; accepts any dimension-matched matrix.
TensorCoefficients decompose(const TensorBasis& basis, const Matrix& rho);
Matrix reconstruct(const TensorBasis& basis, const TensorCoefficients& coeffs);

// K_m = sum_{r=m}^{N} |Tr(rho T^(r)_m)|^2 for m = 0..N. The magnitudes are
// phase-convention independent since |Tr(rho T)| = |Tr(T^dagger rho)|.
RealVector km_distribution(const TensorBasis& basis, const Matrix& rho0);

}  // namespace spinmetro
