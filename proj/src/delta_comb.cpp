#include "tslice/delta_comb.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace tslice {

DeltaComb::DeltaComb(std::vector<DeltaTerm> terms)
{
    std::map<std::pair<Rational, unsigned>, Rational> merged;
    for (auto& t : terms) {
        t.center.canonicalize();
        t.coeff.canonicalize();
        merged[{t.center, t.order}] += t.coeff;
    }
    for (auto& [key, coeff] : merged)
        if (coeff != 0) terms_.push_back({key.first, key.second, coeff});
}

std::vector<Rational> DeltaComb::centers() const
{
    std::vector<Rational> out;
    for (const auto& t : terms_)
        if (out.empty() || out.back() != t.center) out.push_back(t.center);
    return out;
}

unsigned DeltaComb::max_order() const
{
    unsigned k = 0;
    for (const auto& t : terms_) k = std::max(k, t.order);
    return k;
}

DeltaComb inverse_laplace(const ExpPoly& a)
{
    std::vector<DeltaTerm> out;
    for (const auto& t : a.terms())
        for (std::size_t k = 0; k < t.poly.size(); ++k)
            if (t.poly[k] != 0) out.push_back({Rational(-t.rate), static_cast<unsigned>(k), t.poly[k]});
    return DeltaComb(std::move(out));
}

ExpPoly laplace(const DeltaComb& comb)
{
    std::vector<ExpTerm> out;
    for (const auto& t : comb.terms()) {
        std::vector<Rational> poly(t.order + 1);
        poly[t.order] = t.coeff;
        out.push_back({std::move(poly), Rational(-t.center)});
    }
    return ExpPoly(std::move(out));
}

namespace {

// k-th derivative of the polynomial evaluated at x.
Rational derivative_at(std::span<const Rational> poly, unsigned k, const Rational& x)
{
    Rational acc;
    for (std::size_t n = poly.size(); n-- > k;) {
        // n!/(n-k)! x^{n-k}, accumulated by Horner on the shifted coefficients
        mpz_class falling = 1;
        for (std::size_t j = 0; j < k; ++j) falling *= static_cast<unsigned long>(n - j);
        acc = acc * x + poly[n] * Rational(falling);
    }
    return acc;
}

} // namespace

Rational comb_pair(const DeltaComb& comb, std::span<const Rational> poly)
{
    Rational total;
    for (const auto& t : comb.terms()) {
        Rational value = t.coeff * derivative_at(poly, t.order, t.center);
        if (t.order % 2 == 1) value = -value;
        total += value;
    }
    total.canonicalize();
    return total;
}

Rational comb_moment(const DeltaComb& comb, unsigned k)
{
    std::vector<Rational> poly(k + 1);
    poly[k] = 1;
    return comb_pair(comb, poly);
}

} // namespace tslice
