#pragma once

#include <vector>

namespace tslice {

/// n-point Gauss-Hermite rule for the standard normal weight: E[f(z)] ~ sum_i w_i f(x_i),
/// with sum_i w_i = 1. Built by Golub-Welsch from the probabilists' Jacobi matrix.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(unsigned n);

} // namespace tslice
