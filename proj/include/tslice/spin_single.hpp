#pragma once

#include "tslice/delta_comb.hpp"
#include "tslice/exppoly.hpp"
#include "tslice/rational.hpp"

namespace tslice {

// Single spin s with self-interaction H = -J S.S. The auxiliary field is rotationally
// invariant, so every slice density matrix is a multiple of the identity and
// Z_L(beta) = (2s+1) [Z_1(beta/L) / (2s+1)]^L.
//
// Spins must satisfy is_valid_spin(s); functions throw std::invalid_argument otherwise.

struct SpinExact {
    double Z;
    Rational U;
    DeltaComb dos;
};

/// Z = (2s+1) e^{beta J s(s+1)}, U = -J s(s+1), g = (2s+1) delta(E + J s(s+1)).
SpinExact spin_exact(const Rational& s, const Rational& J, double beta);

/// Static-approximation partition function sum_m (1 + 2 m^2 beta J) e^{m^2 beta J}.
ExpPoly spin_z1_exppoly(const Rational& s, const Rational& J);

ExpPoly spin_zl_exppoly(const Rational& s, const Rational& J, unsigned L);

/// Z_L in floating point, evaluated in factored form.
double spin_zl(const Rational& s, const Rational& J, unsigned L, double beta);

/// -d ln Z_L / d beta, equal to U_1(beta / L).
double spin_ul(const Rational& s, const Rational& J, unsigned L, double beta);

/// -beta^2 dU_L/d beta = L C_1(beta / L).
double spin_heat_capacity(const Rational& s, const Rational& J, unsigned L, double beta);

/// lim_{beta -> inf} U_L, exact. For J > 0 this is the saddle-point value -J s^2.
Rational spin_ul_zero_temperature(const Rational& s, const Rational& J, unsigned L);

/// Thermal average of the true Hamiltonian: -J s(s+1) for every L and beta.
Rational spin_utilde(const Rational& s, const Rational& J);

/// Exact distributional density of states, inverse Laplace transform of Z_L.
DeltaComb spin_dos(const Rational& s, const Rational& J, unsigned L);

} // namespace tslice
