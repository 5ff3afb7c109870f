#pragma once

#include "spinmetro/spin_system.hpp"

namespace spinmetro {

// Probe-state factory. All states are pure projectors in the Dicke basis.

// (|j,j> + |j,-j>)/sqrt(2): four corner entries of 1/2.
Matrix make_noon(const SpinSystem& s);

// Coherent spin state along +x (the gamma = 0 two-well ground state), built
// from exact binomial amplitudes.
Matrix make_css(const SpinSystem& s);

// H_BH = -E_J Jx + U Jz^2 with E_J = 1 and gamma = N U / E_J <= 0, so the
// coherent-to-cat crossover of the attractive ground state sits at gamma = -1.
// Real symmetric tridiagonal in the Dicke basis.
RealMatrix bh_hamiltonian(const SpinSystem& s, double gamma);

// Ground state of bh_hamiltonian. The symmetric/antisymmetric doublet at
// large |gamma| splits below machine precision, so the diagonalization is
// restricted to the even-parity sector (invariant under m -> -m); the
// returned state is exactly path-symmetric, Tr(Jz rho) = 0.
Matrix make_bh_ground(const SpinSystem& s, double gamma);
double bh_ground_energy(const SpinSystem& s, double gamma);

struct SpinMoments {
  double jx = 0, jy = 0, jz = 0;
  double jxx = 0, jyy = 0, jzz = 0;
  // symmetrized second moments <{Ja,Jb}>/2
  double xy_sym = 0, xz_sym = 0, yz_sym = 0;
};

SpinMoments initial_moments(const SpinSystem& s, const Matrix& rho);

}  // namespace spinmetro
