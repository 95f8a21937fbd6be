#pragma once

#include "tslice/exppoly.hpp"
#include "tslice/rational.hpp"

#include <span>
#include <vector>

namespace tslice {

/// coeff * delta^{(order)}(E - center)
struct DeltaTerm {
    Rational center;
    unsigned order = 0;
    Rational coeff;

    friend bool operator==(const DeltaTerm&, const DeltaTerm&) = default;
};

/// Finite sum of Dirac deltas and their derivatives. Canonical: sorted by (center, order),
/// (center, order) pairs unique, coefficients nonzero.
class DeltaComb {
public:
    DeltaComb() = default;
    explicit DeltaComb(std::vector<DeltaTerm> terms);

    const std::vector<DeltaTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Distinct centers in increasing order.
    std::vector<Rational> centers() const;
    unsigned max_order() const;

    friend bool operator==(const DeltaComb&, const DeltaComb&) = default;

private:
    std::vector<DeltaTerm> terms_;
};

/// c beta^k e^{rate beta}  ->  c delta^{(k)}(E + rate)
DeltaComb inverse_laplace(const ExpPoly& a);

/// c delta^{(k)}(E - E0)  ->  c beta^k e^{-E0 beta}
ExpPoly laplace(const DeltaComb& comb);

/// Exact pairing with a polynomial test function f (ascending coefficients):
/// sum_i c_i (-1)^{k_i} f^{(k_i)}(E_i).
Rational comb_pair(const DeltaComb& comb, std::span<const Rational> poly);

/// comb_pair with f(E) = E^k.
Rational comb_moment(const DeltaComb& comb, unsigned k);

} // namespace tslice
