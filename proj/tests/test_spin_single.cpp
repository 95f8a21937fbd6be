#include "oracles.hpp"

#include "tslice/curves.hpp"
#include "tslice/model.hpp"
#include "tslice/spin_single.hpp"
#include "tslice/thermo.hpp"

#include <doctest.h>

#include <cmath>

using namespace tslice;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const Rational half = make_rational(1, 2);

} // namespace

TEST_CASE("spin_exact")
{
    CHECK(spin_exact(half, q(1), 0.0).Z == 2.0);
    for (double beta : {0.0, 0.7, 12.0}) CHECK(spin_exact(half, q(1), beta).U == q(-3, 4));
    CHECK(spin_exact(q(1), q(1), 1.0).Z == doctest::Approx(3 * std::exp(2.0)));
    CHECK(spin_exact(q(1), q(1), 1.0).dos == DeltaComb({{q(-2), 0, q(3)}}));
}

TEST_CASE("spin_z1_exppoly")
{
    CHECK(spin_z1_exppoly(half, q(1)) == ExpPoly::term({q(2), q(1)}, q(1, 4)));
    CHECK(spin_z1_exppoly(q(1), q(1)) == ExpPoly::constant(q(1)) + ExpPoly::term({q(2), q(4)}, q(1)));
    for (const Rational& s : {half, q(1), q(3, 2), q(2), q(7, 2)})
        CHECK(exppoly_eval(spin_z1_exppoly(s, q(3, 5)), 0.0) == doctest::Approx(to_double(2 * s + 1)));
    CHECK_THROWS_AS(spin_z1_exppoly(q(1, 3), q(1)), std::invalid_argument);
    CHECK_THROWS_AS(spin_z1_exppoly(q(0), q(1)), std::invalid_argument);
}

TEST_CASE("spin_zl_exppoly")
{
    CHECK(spin_zl_exppoly(half, q(1), 4) == exppoly_pow(ExpPoly::term({q(1), q(1, 8)}, q(1, 16)), 4) * q(2));
    for (const Rational& s : {half, q(1), q(5, 2)}) CHECK(spin_zl_exppoly(s, q(2), 1) == spin_z1_exppoly(s, q(2)));

    const double z1_half = exppoly_eval(spin_z1_exppoly(q(1), q(1)), 0.5);
    CHECK(exppoly_eval(spin_zl_exppoly(q(1), q(1), 2), 1.0) == doctest::Approx(z1_half * z1_half / 3));

    for (unsigned L : {1u, 2u, 5u, 9u})
        for (double beta : {0.3, 2.0, 6.0})
            CHECK(spin_zl(q(3, 2), q(1, 2), L, beta) ==
                  doctest::Approx(exppoly_eval(spin_zl_exppoly(q(3, 2), q(1, 2), L), beta)).epsilon(1e-12));
}

TEST_CASE("spin_ul")
{
    CHECK(spin_ul_zero_temperature(half, q(1), 1) == q(-1, 4));
    CHECK(spin_ul_zero_temperature(q(3, 2), q(2), 5) == q(-9, 2));
    CHECK(std::abs(spin_ul(half, q(1), 1, 1e-6) + 0.75) < 1e-6);
    CHECK(spin_ul(half, q(1), 2, 2.0) == spin_ul(half, q(1), 1, 1.0));

    for (const Rational& s : {half, q(1), q(3, 2)})
        for (unsigned L : {1u, 3u, 7u})
            for (double beta : {0.2, 1.0, 4.0}) {
                double fd = -central_difference([&](double b) { return std::log(spin_zl(s, q(1), L, b)); }, beta, 1e-5);
                CHECK(spin_ul(s, q(1), L, beta) == doctest::Approx(fd).epsilon(1e-7));
            }
}

TEST_CASE("U_L(beta) = U_1(beta/L) as an exact identity")
{
    for (const Rational& s : {half, q(1), q(3, 2)})
        for (const Rational& J : {q(1), q(-2, 3)})
            for (unsigned L = 1; L <= 10; ++L) {
                const ExpPoly zl = spin_zl_exppoly(s, J, L);
                const ExpPoly r = exppoly_rescale(spin_z1_exppoly(s, J), Rational(1, L));
                // -Z_L'/Z_L = -L r'/r  <=>  Z_L' r = L r' Z_L
                CHECK(exppoly_ddbeta(zl) * r == Rational(L) * exppoly_ddbeta(r) * zl);
            }
}

TEST_CASE("spin_utilde")
{
    CHECK(spin_utilde(half, q(1)) == q(-3, 4));
    CHECK(spin_utilde(q(1), q(1)) == q(-2));
    CHECK(spin_utilde(q(3, 2), q(2)) == q(-15, 2));
}

TEST_CASE("spin_dos")
{
    CHECK(spin_dos(half, q(1), 1) == DeltaComb({{q(-1, 4), 0, q(2)}, {q(-1, 4), 1, q(1)}}));
    CHECK(spin_dos(half, q(1), 2) == DeltaComb({{q(-1, 4), 0, q(2)}, {q(-1, 4), 1, q(1)}, {q(-1, 4), 2, q(1, 8)}}));

    for (const Rational& s : {half, q(1), q(3, 2), q(2), q(5, 2)})
        for (const Rational& J : {q(1), q(2)})
            for (unsigned L = 1; L <= 6; ++L) {
                const DeltaComb g = spin_dos(s, J, L);
                CHECK(comb_moment(g, 0) == 2 * s + 1);
                const Rational upper = s.get_den() == 1 ? q(0) : Rational(-J / 4);
                for (const auto& c : g.centers()) {
                    CHECK(c >= -J * s * s);
                    CHECK(c <= upper);
                }
            }
}

TEST_CASE("heat capacity is negative")
{
    for (unsigned L = 1; L <= 10; ++L)
        for (double beta = 0.11; beta < 10; beta += 0.13) CHECK(spin_heat_capacity(half, q(1), L, beta) < 0);

    for (double beta : {0.5, 3.0}) {
        double fd = -beta * beta * central_difference([&](double b) { return spin_ul(q(1), q(1), 3, b); }, beta, 1e-5);
        CHECK(spin_heat_capacity(q(1), q(1), 3, beta) == doctest::Approx(fd).epsilon(1e-6));
        CHECK(spin_heat_capacity(q(1), q(1), 3, beta) == doctest::Approx(3 * spin_heat_capacity(q(1), q(1), 1, beta / 3)));
    }
}

TEST_CASE("moments are correct to O(1/L)")
{
    for (const Rational& s : {half, q(1), q(3, 2)}) {
        const Rational exact1 = -s * (s + 1);
        const Rational exact2 = exact1 * exact1;
        std::vector<double> Ls, errs;
        for (unsigned L = 1; L <= 10; ++L) {
            const DeltaComb g = spin_dos(s, q(1), L);
            CHECK(comb_moment(g, 1) / (2 * s + 1) == exact1);
            const Rational err = abs(comb_moment(g, 2) / (2 * s + 1) - exact2);
            CHECK(err > 0);
            if (L >= 4) {
                Ls.push_back(L);
                errs.push_back(to_double(err));
            }
        }
        const double slope = oracle::loglog_slope(Ls, errs);
        CHECK(slope == doctest::Approx(-1.0).epsilon(0.1));
        MESSAGE("s = " << to_string(s) << ": L * (second-moment error) at L = 10 is " << 10 * errs.back());
    }
}

TEST_CASE("Z_L converges pointwise")
{
    for (double beta : {0.25, 1.0, 3.0}) {
        const double exact = spin_exact(half, q(1), beta).Z;
        double previous = INFINITY;
        for (unsigned L = 1; L <= 64; L *= 2) {
            double err = std::abs(spin_zl(half, q(1), L, beta) - exact);
            CHECK(err < previous);
            previous = err;
        }
        CHECK(previous / exact < 0.05);
    }
}

TEST_CASE("curves and limits")
{
    const ModelSpec m = single_spin_model(half, q(1), 3);
    const std::vector<double> betas = beta_grid(0.1, 10, 20, Spacing::Log);
    const ThermoCurve c = model_curve(m, betas);
    REQUIRE(c.samples.size() == betas.size());
    for (const auto& s : c.samples) {
        CHECK(s.Z > 0);
        CHECK(s.T == doctest::Approx(1 / s.beta));
        REQUIRE(s.Utilde.has_value());
        CHECK(*s.Utilde == doctest::Approx(-0.75));
    }
    const ZeroTemperatureLimits lim = zero_temperature_limits(m);
    CHECK(lim.U == q(-1, 4));
    CHECK(lim.Utilde == q(-3, 4));
    CHECK(lim.C == q(-3));
    const ZeroTemperatureLimits ex = exact_zero_temperature_limits(m);
    CHECK(ex.U == q(-3, 4));
    CHECK(ex.C == q(0));
}
