#pragma once

#include "tslice/delta_comb.hpp"
#include "tslice/exppoly.hpp"
#include "tslice/rational.hpp"

#include <optional>
#include <vector>

namespace tslice {

// Spin-1/2 dimer H = -J'(S1.S1 + S2.S2) - 2J S1.S2. The self-interaction J' makes the
// Gaussian field integral converge for J' > |J|; the closed forms below are entire in
// J and J' and are continued to J' = 0. J > 0 is ferromagnetic.
//
// Every function taking J throws std::invalid_argument for J == 0: the projector
// coefficients divide by J^2, and that case is the product of two single spins.

/// Eigenvalues of H on the triplet and singlet.
struct DimerLevels {
    Rational triplet; // -3J'/2 - J/2
    Rational singlet; // -3J'/2 + 3J/2
};

DimerLevels dimer_levels(const Rational& J, const Rational& Jprime);

/// rho_L(beta) = [triplet(beta)^L P1 + singlet(beta)^L P0] e^{shift_rate beta}.
/// triplet and singlet are the per-slice brackets, already in the variable beta/L, so
/// both equal 1 at beta = 0.
struct ProjectorWeights {
    ExpPoly triplet;
    ExpPoly singlet;
    Rational shift_rate; // J'/2
    unsigned L = 1;
};

ProjectorWeights dimer_weights(const Rational& J, const Rational& Jprime, unsigned L);

/// 3 triplet^L e^{J' beta/2} + singlet^L e^{J' beta/2}
ExpPoly dimer_zl_exppoly(const Rational& J, const Rational& Jprime, unsigned L);

/// Per-slice bracket values at beta, evaluated in a form that stays accurate when J << J'.
struct DimerSliceValues {
    double triplet;
    double singlet;
};

DimerSliceValues dimer_slice_values(const Rational& J, const Rational& Jprime, unsigned L, double beta);

double dimer_zl(const Rational& J, const Rational& Jprime, unsigned L, double beta);

/// -d ln Z_L / d beta
double dimer_ul(const Rational& J, const Rational& Jprime, unsigned L, double beta);

/// Tr[rho_L H] / Tr rho_L
double dimer_utilde(const Rational& J, const Rational& Jprime, unsigned L, double beta);

/// -beta^2 dU_L / d beta
double dimer_heat_capacity(const Rational& J, const Rational& Jprime, unsigned L, double beta);

/// Exact beta -> infinity limits of U_L and Utilde_L (nullopt if divergent).
std::optional<Rational> dimer_ul_zero_temperature(const Rational& J, const Rational& Jprime, unsigned L);
std::optional<Rational> dimer_utilde_zero_temperature(const Rational& J, const Rational& Jprime, unsigned L);

DeltaComb dimer_dos(const Rational& J, const Rational& Jprime, unsigned L);

/// Exact Taylor coefficients of Z_L about beta = 0; order <= 8.
std::vector<Rational> dimer_series(const Rational& J, const Rational& Jprime, unsigned L, unsigned order);

struct BetaInterval {
    double lo;
    double hi;
};

/// First interval in (0, beta_max] where the singlet weight singlet(beta)^L is negative
/// (J' = 0). Located by a sign scan at step 0.01 and bisection of each edge to 1e-9;
/// hi == beta_max when the weight stays negative. Requires J > 0.
std::optional<BetaInterval> dimer_negative_weight_region(const Rational& J, unsigned L, double beta_max);

struct BoundViolation {
    double beta;
    double utilde;
    double bound;
};

/// Searches [beta_min, beta_max] on a grid of the given step for Utilde_L below the
/// ground-state energy min(triplet, singlet) and refines the deepest grid point by
/// golden-section search. nullopt when no grid point lies below the bound.
std::optional<BoundViolation> dimer_utilde_below_bound(const Rational& J, const Rational& Jprime, unsigned L,
                                                       double beta_min, double beta_max, double step);

} // namespace tslice
