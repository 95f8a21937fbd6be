#pragma once

#include "tslice/thermo.hpp"

#include <span>

namespace tslice {

/// L-approximant curve (Z, U, Utilde, C) for the model on the given betas.
ThermoCurve model_curve(const ModelSpec& model, std::span<const double> betas);

/// Exact (continuum) curve of the same system; the model's L is ignored.
ThermoCurve exact_curve(const ModelSpec& model, std::span<const double> betas);

/// Exact T = 0 limits of the L-approximant. Oscillator: U -> 0, C -> L.
ZeroTemperatureLimits zero_temperature_limits(const ModelSpec& model);

/// Exact T = 0 limits of the exact system (ground-state energy, C -> 0).
ZeroTemperatureLimits exact_zero_temperature_limits(const ModelSpec& model);

} // namespace tslice
