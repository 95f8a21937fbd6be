#pragma once

// Harmonic oscillator with the path restricted to L Matsubara frequencies (L odd),
// in units hbar*omega = k_B = 1. All functions throw std::invalid_argument for even or
// zero L and std::domain_error for beta <= 0 where beta is an argument.

namespace tslice {

/// Z_L(beta) = (1/beta) prod_{n=1}^{(L-1)/2} [1 + (beta / 2 pi n)^2]^{-1}
double sho_z(unsigned L, double beta);

/// Smooth density of states whose Laplace transform is sho_z. Vanishes for E < 0;
/// Theta(0) is taken as 1.
double sho_dos(unsigned L, double E);

/// 2^{L-1} ((L-1)/2)!^2 / (L-1)!, computed exactly then rounded.
double sho_dos_prefactor(unsigned L);

/// -d ln Z_L / d beta. Tends to 0 as beta -> infinity for every L.
double sho_u(unsigned L, double beta);

/// -beta^2 dU_L/d beta. Tends to L at low temperature, to 1 at high temperature.
double sho_heat_capacity(unsigned L, double beta);

double sho_exact_z(double beta);
double sho_exact_u(double beta);
double sho_exact_heat_capacity(double beta);

} // namespace tslice
