#include "tslice/spin_single.hpp"

#include "tslice/model.hpp"

#include <cmath>
#include <stdexcept>

namespace tslice {

namespace {

void require_spin(const Rational& s)
{
    if (!is_valid_spin(s)) throw std::invalid_argument("spin s must be a positive half-integer");
}

void require_slices(unsigned L)
{
    if (L == 0) throw std::invalid_argument("slice count L must be >= 1");
}

Rational multiplicity(const Rational& s) { return 2 * s + 1; }

struct Z1Derivatives {
    double z, dz, d2z;
};

Z1Derivatives z1_at(const Rational& s, const Rational& J, double x)
{
    ExpPoly z1 = spin_z1_exppoly(s, J);
    ExpPoly d1 = exppoly_ddbeta(z1);
    ExpPoly d2 = exppoly_ddbeta(d1);
    return {exppoly_eval(z1, x), exppoly_eval(d1, x), exppoly_eval(d2, x)};
}

} // namespace

SpinExact spin_exact(const Rational& s, const Rational& J, double beta)
{
    require_spin(s);
    Rational level = -J * s * (s + 1);
    Rational g = multiplicity(s);
    return {to_double(g) * std::exp(-beta * to_double(level)), level, DeltaComb({{level, 0, g}})};
}

ExpPoly spin_z1_exppoly(const Rational& s, const Rational& J)
{
    require_spin(s);
    ExpPoly z1;
    long states = static_cast<long>(multiplicity(s).get_num().get_si());
    for (long k = 0; k < states; ++k) {
        Rational m = -s + k;
        Rational m2J = m * m * J;
        z1 += ExpPoly::term({Rational(1), 2 * m2J}, m2J);
    }
    return z1;
}

ExpPoly spin_zl_exppoly(const Rational& s, const Rational& J, unsigned L)
{
    require_slices(L);
    Rational g = multiplicity(s);
    ExpPoly per_state = exppoly_rescale(spin_z1_exppoly(s, J), Rational(1, L)) * Rational(1 / g);
    return g * exppoly_pow(per_state, L);
}

double spin_zl(const Rational& s, const Rational& J, unsigned L, double beta)
{
    require_slices(L);
    double g = to_double(multiplicity(s));
    double z1 = exppoly_eval(spin_z1_exppoly(s, J), beta / L);
    return g * std::pow(z1 / g, static_cast<int>(L));
}

double spin_ul(const Rational& s, const Rational& J, unsigned L, double beta)
{
    require_slices(L);
    auto d = z1_at(s, J, beta / L);
    return -d.dz / d.z;
}

double spin_heat_capacity(const Rational& s, const Rational& J, unsigned L, double beta)
{
    require_slices(L);
    double x = beta / L;
    auto d = z1_at(s, J, x);
    double r = d.dz / d.z;
    return L * x * x * (d.d2z / d.z - r * r);
}

Rational spin_ul_zero_temperature(const Rational& s, const Rational& J, unsigned L)
{
    ExpPoly z = spin_zl_exppoly(s, J, L);
    auto limit = exppoly_ratio_limit(-exppoly_ddbeta(z), z);
    if (!limit) throw std::domain_error("U_L has no finite zero-temperature limit");
    return *limit;
}

Rational spin_utilde(const Rational& s, const Rational& J)
{
    require_spin(s);
    return -J * s * (s + 1);
}

DeltaComb spin_dos(const Rational& s, const Rational& J, unsigned L)
{
    return inverse_laplace(spin_zl_exppoly(s, J, L));
}

} // namespace tslice
