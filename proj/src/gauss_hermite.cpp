#include "tslice/gauss_hermite.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace tslice {

GaussHermiteRule gauss_hermite(unsigned n)
{
    if (n == 0) throw std::invalid_argument("Gauss-Hermite rule needs at least one node");

    // He_{k+1} = x He_k - k He_{k-1}: symmetric Jacobi matrix with off-diagonal sqrt(k).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (unsigned k = 1; k < n; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double total = 0;
    for (unsigned i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;
        total += rule.weights[i];
    }
    for (auto& w : rule.weights) w /= total;

    // Symmetrize to remove eigensolver noise in the odd moments.
    for (unsigned i = 0; i < n / 2; ++i) {
        double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
        double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0;
    return rule;
}

} // namespace tslice
