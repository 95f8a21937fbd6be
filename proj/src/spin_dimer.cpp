#include "tslice/spin_dimer.hpp"

#include <cmath>
#include <stdexcept>

namespace tslice {

namespace {

void require_coupling(const Rational& J, unsigned L)
{
    if (J == 0)
        throw std::invalid_argument("dimer projector weights need J != 0; for J = 0 use the single-spin product form");
    if (L == 0) throw std::invalid_argument("slice count L must be >= 1");
}

ExpPoly power_with_shift(const ProjectorWeights& w, const ExpPoly& bracket)
{
    return exppoly_pow(bracket, w.L) * ExpPoly::monomial(1, 0, w.shift_rate);
}

// Value, first and second beta-derivative of bracket^L.
struct PowerDerivs {
    double f, df, d2f;
};

PowerDerivs bracket_power(double c, double dc, double d2c, unsigned L)
{
    double n = L;
    double cl1 = L >= 1 ? std::pow(c, static_cast<int>(L - 1)) : 0.0;
    double cl2 = L >= 2 ? std::pow(c, static_cast<int>(L - 2)) : 0.0;
    return {cl1 * c, n * cl1 * dc, n * (n - 1) * cl2 * dc * dc + n * cl1 * d2c};
}

struct WeightDerivs {
    PowerDerivs triplet, singlet;
};

WeightDerivs weight_derivs(const Rational& J, const Rational& Jprime, unsigned L, double beta)
{
    ProjectorWeights w = dimer_weights(J, Jprime, L);
    DimerSliceValues v = dimer_slice_values(J, Jprime, L, beta);
    ExpPoly dt = exppoly_ddbeta(w.triplet);
    ExpPoly ds = exppoly_ddbeta(w.singlet);
    return {bracket_power(v.triplet, exppoly_eval(dt, beta), exppoly_eval(exppoly_ddbeta(dt), beta), L),
            bracket_power(v.singlet, exppoly_eval(ds, beta), exppoly_eval(exppoly_ddbeta(ds), beta), L)};
}

} // namespace

DimerLevels dimer_levels(const Rational& J, const Rational& Jprime)
{
    Rational self = Rational(-3, 2) * Jprime;
    return {self - J / 2, self + Rational(3, 2) * J};
}

ProjectorWeights dimer_weights(const Rational& J, const Rational& Jprime, unsigned L)
{
    require_coupling(J, L);
    Rational r = Jprime * Jprime / (J * J);
    Rational plus = (J + Jprime) * (J + Jprime);
    Rational minus = (J - Jprime) * (J - Jprime);
    Rational up = J / 2;
    Rational down = -J / 2;

    // Single-slice brackets in the variable beta; the L-slice ones follow by beta -> beta/L.
    ExpPoly triplet = ExpPoly::term({Rational(5, 6) - r / 6, plus / (3 * J)}, up) +
                      ExpPoly::term({Rational(1, 6) + r / 6, -minus / (6 * J)}, down);
    ExpPoly singlet = ExpPoly::term({Rational(-1, 2) + r / 2}, up) +
                      ExpPoly::term({Rational(3, 2) - r / 2, -minus / (2 * J)}, down);

    Rational per_slice(1, L);
    return {exppoly_rescale(triplet, per_slice), exppoly_rescale(singlet, per_slice), Jprime / 2, L};
}

ExpPoly dimer_zl_exppoly(const Rational& J, const Rational& Jprime, unsigned L)
{
    ProjectorWeights w = dimer_weights(J, Jprime, L);
    return 3 * power_with_shift(w, w.triplet) + power_with_shift(w, w.singlet);
}

DimerSliceValues dimer_slice_values(const Rational& J, const Rational& Jprime, unsigned L, double beta)
{
    require_coupling(J, L);
    double j = to_double(J);
    double jp = to_double(Jprime);
    double b = beta / L;
    double x = b * j / 2;
    double r = to_double(Jprime * Jprime / (J * J));
    double ep = std::exp(x);
    double em = std::exp(-x);
    double sh = std::sinh(x);
    // The J'^2/J^2 pieces are grouped with sinh so the O(1/J) parts cancel analytically.
    double triplet = (5 * ep + em) / 6 - r / 3 * sh + (b / j) * ((j + jp) * (j + jp) * ep / 3 - (j - jp) * (j - jp) * em / 6);
    double singlet = (-ep + 3 * em) / 2 + r * sh - (b / (2 * j)) * (j - jp) * (j - jp) * em;
    return {triplet, singlet};
}

double dimer_zl(const Rational& J, const Rational& Jprime, unsigned L, double beta)
{
    auto v = dimer_slice_values(J, Jprime, L, beta);
    int n = static_cast<int>(L);
    return (3 * std::pow(v.triplet, n) + std::pow(v.singlet, n)) * std::exp(to_double(Jprime) * beta / 2);
}

double dimer_ul(const Rational& J, const Rational& Jprime, unsigned L, double beta)
{
    auto d = weight_derivs(J, Jprime, L, beta);
    double f = 3 * d.triplet.f + d.singlet.f;
    double df = 3 * d.triplet.df + d.singlet.df;
    return -to_double(Jprime) / 2 - df / f;
}

double dimer_heat_capacity(const Rational& J, const Rational& Jprime, unsigned L, double beta)
{
    auto d = weight_derivs(J, Jprime, L, beta);
    double f = 3 * d.triplet.f + d.singlet.f;
    double df = 3 * d.triplet.df + d.singlet.df;
    double d2f = 3 * d.triplet.d2f + d.singlet.d2f;
    double r = df / f;
    return beta * beta * (d2f / f - r * r);
}

double dimer_utilde(const Rational& J, const Rational& Jprime, unsigned L, double beta)
{
    auto v = dimer_slice_values(J, Jprime, L, beta);
    auto levels = dimer_levels(J, Jprime);
    int n = static_cast<int>(L);
    // The common factor e^{J' beta / 2} cancels.
    double w1 = 3 * std::pow(v.triplet, n);
    double w0 = std::pow(v.singlet, n);
    return (w1 * to_double(levels.triplet) + w0 * to_double(levels.singlet)) / (w1 + w0);
}

std::optional<Rational> dimer_ul_zero_temperature(const Rational& J, const Rational& Jprime, unsigned L)
{
    ExpPoly z = dimer_zl_exppoly(J, Jprime, L);
    return exppoly_ratio_limit(-exppoly_ddbeta(z), z);
}

std::optional<Rational> dimer_utilde_zero_temperature(const Rational& J, const Rational& Jprime, unsigned L)
{
    ProjectorWeights w = dimer_weights(J, Jprime, L);
    auto levels = dimer_levels(J, Jprime);
    ExpPoly w1 = 3 * power_with_shift(w, w.triplet);
    ExpPoly w0 = power_with_shift(w, w.singlet);
    return exppoly_ratio_limit(levels.triplet * w1 + levels.singlet * w0, w1 + w0);
}

DeltaComb dimer_dos(const Rational& J, const Rational& Jprime, unsigned L)
{
    return inverse_laplace(dimer_zl_exppoly(J, Jprime, L));
}

std::vector<Rational> dimer_series(const Rational& J, const Rational& Jprime, unsigned L, unsigned order)
{
    if (order > 8) throw std::invalid_argument("dimer_series: order must be <= 8");
    return exppoly_taylor(dimer_zl_exppoly(J, Jprime, L), order);
}

std::optional<BetaInterval> dimer_negative_weight_region(const Rational& J, unsigned L, double beta_max)
{
    if (!(J > 0)) throw std::invalid_argument("negative-weight search assumes ferromagnetic J > 0");
    if (!(beta_max > 0)) throw std::invalid_argument("beta_max must be positive");

    constexpr double scan_step = 0.01;
    constexpr double tolerance = 1e-9;
    const int n = static_cast<int>(L);
    auto negative = [&](double beta) {
        return std::pow(dimer_slice_values(J, Rational(0), L, beta).singlet, n) < 0;
    };
    // Shrinks [a, b] around the sign change, with negative(a) != negative(b).
    auto bisect = [&](double a, double b) {
        bool at_a = negative(a);
        while (b - a > tolerance) {
            double mid = 0.5 * (a + b);
            (negative(mid) == at_a ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };

    std::optional<double> lo;
    double prev = 0;
    for (long k = 1;; ++k) {
        double beta = std::min(k * scan_step, beta_max);
        bool neg = negative(beta);
        if (!lo && neg) lo = k == 1 ? beta : bisect(prev, beta);
        if (lo && !neg) return BetaInterval{*lo, bisect(prev, beta)};
        if (beta >= beta_max) break;
        prev = beta;
    }
    if (lo) return BetaInterval{*lo, beta_max};
    return std::nullopt;
}

std::optional<BoundViolation> dimer_utilde_below_bound(const Rational& J, const Rational& Jprime, unsigned L,
                                                       double beta_min, double beta_max, double step)
{
    if (!(step > 0) || !(beta_max > beta_min) || !(beta_min > 0))
        throw std::invalid_argument("dimer_utilde_below_bound: need 0 < beta_min < beta_max and step > 0");
    auto levels = dimer_levels(J, Jprime);
    double bound = to_double(levels.triplet < levels.singlet ? levels.triplet : levels.singlet);
    auto utilde = [&](double beta) { return dimer_utilde(J, Jprime, L, beta); };

    double best_beta = beta_min;
    double best = utilde(beta_min);
    long count = static_cast<long>(std::floor((beta_max - beta_min) / step + 1e-9));
    for (long k = 1; k <= count; ++k) {
        double beta = beta_min + k * step;
        double u = utilde(beta);
        if (u < best) {
            best = u;
            best_beta = beta;
        }
    }
    if (!(best < bound)) return std::nullopt;

    // Golden-section refinement of the deepest grid point within one step either side.
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = std::max(beta_min, best_beta - step);
    double b = std::min(beta_max, best_beta + step);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = utilde(c), fd = utilde(d);
    while (b - a > 1e-9 * std::max(1.0, std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = utilde(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = utilde(d);
        }
    }
    double refined = 0.5 * (a + b);
    double u = utilde(refined);
    if (u < best) return BoundViolation{refined, u, bound};
    return BoundViolation{best_beta, best, bound};
}

} // namespace tslice
