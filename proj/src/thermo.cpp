#include "tslice/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace tslice {

std::vector<double> beta_grid(double beta_min, double beta_max, unsigned steps, Spacing spacing)
{
    if (!(beta_min > 0)) throw std::invalid_argument("beta_min must be positive");
    if (!(beta_max > beta_min)) throw std::invalid_argument("beta_max must exceed beta_min");
    if (steps < 2) throw std::invalid_argument("need at least two beta steps");

    std::vector<double> out(steps);
    for (unsigned i = 0; i < steps; ++i) {
        double t = static_cast<double>(i) / (steps - 1);
        out[i] = spacing == Spacing::Linear ? beta_min + t * (beta_max - beta_min)
                                            : beta_min * std::pow(beta_max / beta_min, t);
    }
    out.back() = beta_max;
    return out;
}

} // namespace tslice
