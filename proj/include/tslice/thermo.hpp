#pragma once

#include "tslice/model.hpp"

#include <optional>
#include <vector>

namespace tslice {

/// One row of a thermodynamic curve. Utilde is absent where no thermal average of the
/// true Hamiltonian is defined (the oscillator).
struct ThermoSample {
    double beta = 0;
    double T = 0;
    double Z = 0;
    double U = 0;
    std::optional<double> Utilde;
    double C = 0;
};

/// Samples for one model at one L, or for the exact (L -> infinity) system when exact is set.
struct ThermoCurve {
    ModelSpec model;
    bool exact = false;
    std::vector<ThermoSample> samples;
};

/// T = 0 values, obtained as exact beta -> infinity limits rather than large-beta evaluation.
struct ZeroTemperatureLimits {
    std::optional<Rational> U;
    std::optional<Rational> Utilde;
    std::optional<Rational> C;
};

enum class Spacing { Linear, Log };

/// steps >= 2 points from beta_min to beta_max inclusive; beta_min > 0, beta_max > beta_min.
std::vector<double> beta_grid(double beta_min, double beta_max, unsigned steps, Spacing spacing);

/// Central finite difference of f at x with step h.
template <typename F>
double central_difference(F&& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2 * h);
}

} // namespace tslice
