#include "tslice/sho.hpp"

#include "tslice/rational.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tslice {

namespace {

unsigned half_count(unsigned L)
{
    if (L == 0 || L % 2 == 0) throw std::invalid_argument("oscillator L must be odd and positive");
    return (L - 1) / 2;
}

void require_positive(double beta)
{
    if (!(beta > 0)) throw std::domain_error("beta must be positive");
}

// (2 pi n)^2
double pole_sq(unsigned n)
{
    double w = 2 * std::numbers::pi * n;
    return w * w;
}

} // namespace

double sho_z(unsigned L, double beta)
{
    unsigned M = half_count(L);
    require_positive(beta);
    double z = 1 / beta;
    for (unsigned n = 1; n <= M; ++n) z /= 1 + beta * beta / pole_sq(n);
    return z;
}

double sho_dos_prefactor(unsigned L)
{
    unsigned M = half_count(L);
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, L - 1);
    mpz_class m_fact = factorial(M);
    Rational pref(two_pow * m_fact * m_fact, factorial(L - 1));
    pref.canonicalize();
    return to_double(pref);
}

double sho_dos(unsigned L, double E)
{
    double pref = sho_dos_prefactor(L);
    if (E < 0) return 0;
    return pref * std::pow(std::sin(std::numbers::pi * E), static_cast<int>(L - 1));
}

double sho_u(unsigned L, double beta)
{
    unsigned M = half_count(L);
    require_positive(beta);
    double u = 1 / beta;
    for (unsigned n = 1; n <= M; ++n) u += 2 * beta / (pole_sq(n) + beta * beta);
    return u;
}

double sho_heat_capacity(unsigned L, double beta)
{
    unsigned M = half_count(L);
    require_positive(beta);
    double b2 = beta * beta;
    double c = 1;
    for (unsigned n = 1; n <= M; ++n) {
        double a = pole_sq(n);
        c -= b2 * 2 * (a - b2) / ((a + b2) * (a + b2));
    }
    return c;
}

double sho_exact_z(double beta)
{
    require_positive(beta);
    return 1 / (2 * std::sinh(beta / 2));
}

double sho_exact_u(double beta)
{
    require_positive(beta);
    return 0.5 / std::tanh(beta / 2);
}

double sho_exact_heat_capacity(double beta)
{
    require_positive(beta);
    double x = beta / 2;
    double s = std::sinh(x);
    return x * x / (s * s);
}

} // namespace tslice
