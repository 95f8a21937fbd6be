#include "tslice/curves.hpp"

#include "tslice/sho.hpp"
#include "tslice/spin_dimer.hpp"
#include "tslice/spin_single.hpp"

#include <cmath>

namespace tslice {

namespace {

ThermoSample row(double beta, double z, double u, std::optional<double> utilde, double c)
{
    return {beta, 1 / beta, z, u, utilde, c};
}

// ln Z ~ rate beta + degree ln beta as beta -> inf, so C = -beta^2 dU/dbeta -> -degree.
std::optional<Rational> heat_capacity_limit(const ExpPoly& z)
{
    auto top = exppoly_dominant(z);
    if (!top) return std::nullopt;
    return Rational(-static_cast<long>(top->degree));
}

} // namespace

ThermoCurve model_curve(const ModelSpec& model, std::span<const double> betas)
{
    validate(model);
    ThermoCurve curve{model, false, {}};
    curve.samples.reserve(betas.size());
    const unsigned L = model.L;
    for (double beta : betas) {
        switch (model.kind) {
        case ModelKind::Sho:
            curve.samples.push_back(row(beta, sho_z(L, beta), sho_u(L, beta), std::nullopt, sho_heat_capacity(L, beta)));
            break;
        case ModelKind::SingleSpin:
            curve.samples.push_back(row(beta, spin_zl(model.s, model.J, L, beta), spin_ul(model.s, model.J, L, beta),
                                        to_double(spin_utilde(model.s, model.J)),
                                        spin_heat_capacity(model.s, model.J, L, beta)));
            break;
        case ModelKind::Dimer:
            curve.samples.push_back(row(beta, dimer_zl(model.J, model.Jprime, L, beta),
                                        dimer_ul(model.J, model.Jprime, L, beta),
                                        dimer_utilde(model.J, model.Jprime, L, beta),
                                        dimer_heat_capacity(model.J, model.Jprime, L, beta)));
            break;
        }
    }
    return curve;
}

ThermoCurve exact_curve(const ModelSpec& model, std::span<const double> betas)
{
    validate(model);
    ThermoCurve curve{model, true, {}};
    curve.samples.reserve(betas.size());
    for (double beta : betas) {
        switch (model.kind) {
        case ModelKind::Sho:
            curve.samples.push_back(
                row(beta, sho_exact_z(beta), sho_exact_u(beta), std::nullopt, sho_exact_heat_capacity(beta)));
            break;
        case ModelKind::SingleSpin: {
            auto ex = spin_exact(model.s, model.J, beta);
            double u = to_double(ex.U);
            curve.samples.push_back(row(beta, ex.Z, u, u, 0.0));
            break;
        }
        case ModelKind::Dimer: {
            auto levels = dimer_levels(model.J, model.Jprime);
            double et = to_double(levels.triplet), es = to_double(levels.singlet);
            // Boltzmann weights relative to the lower level keep the ratios finite.
            double e0 = std::min(et, es);
            double wt = 3 * std::exp(-beta * (et - e0)), ws = std::exp(-beta * (es - e0));
            double z = (wt + ws) * std::exp(-beta * e0);
            double u = (wt * et + ws * es) / (wt + ws);
            double u2 = (wt * et * et + ws * es * es) / (wt + ws);
            curve.samples.push_back(row(beta, z, u, u, beta * beta * (u2 - u * u)));
            break;
        }
        }
    }
    return curve;
}

ZeroTemperatureLimits zero_temperature_limits(const ModelSpec& model)
{
    validate(model);
    switch (model.kind) {
    case ModelKind::Sho: return {Rational(0), std::nullopt, Rational(model.L)};
    case ModelKind::SingleSpin: {
        Rational u = spin_ul_zero_temperature(model.s, model.J, model.L);
        return {u, spin_utilde(model.s, model.J),
                heat_capacity_limit(spin_zl_exppoly(model.s, model.J, model.L))};
    }
    case ModelKind::Dimer:
        return {dimer_ul_zero_temperature(model.J, model.Jprime, model.L),
                dimer_utilde_zero_temperature(model.J, model.Jprime, model.L),
                heat_capacity_limit(dimer_zl_exppoly(model.J, model.Jprime, model.L))};
    }
    return {};
}

ZeroTemperatureLimits exact_zero_temperature_limits(const ModelSpec& model)
{
    validate(model);
    switch (model.kind) {
    case ModelKind::Sho: return {Rational(1, 2), std::nullopt, Rational(0)};
    case ModelKind::SingleSpin: {
        Rational u = spin_utilde(model.s, model.J);
        return {u, u, Rational(0)};
    }
    case ModelKind::Dimer: {
        auto levels = dimer_levels(model.J, model.Jprime);
        Rational e0 = levels.triplet < levels.singlet ? levels.triplet : levels.singlet;
        return {e0, e0, Rational(0)};
    }
    }
    return {};
}

} // namespace tslice
