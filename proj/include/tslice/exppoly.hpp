#pragma once

#include "tslice/rational.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace tslice {

/// One term p(beta) * exp(rate * beta); poly holds coefficients in ascending degree.
struct ExpTerm {
    std::vector<Rational> poly;
    Rational rate;

    friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Exact finite sum of polynomial-times-exponential terms in the inverse temperature.
///
/// Canonical form: terms sorted by strictly increasing rate, every polynomial has a
/// nonzero leading coefficient (trailing zeros trimmed), no empty polynomials. The
/// zero ExpPoly has no terms. Equality is therefore structural equality.
class ExpPoly {
public:
    ExpPoly() = default;
    explicit ExpPoly(std::vector<ExpTerm> terms);

    static ExpPoly constant(const Rational& c);
    /// c * beta^degree * exp(rate * beta)
    static ExpPoly monomial(const Rational& c, std::size_t degree, const Rational& rate);
    /// poly(beta) * exp(rate * beta)
    static ExpPoly term(std::vector<Rational> poly, const Rational& rate);

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ExpPoly& operator+=(const ExpPoly& other);
    ExpPoly& operator-=(const ExpPoly& other);
    ExpPoly& operator*=(const Rational& c);

    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator-(ExpPoly a) { return a *= Rational(-1); }
    friend ExpPoly operator*(ExpPoly a, const Rational& c) { return a *= c; }
    friend ExpPoly operator*(const Rational& c, ExpPoly a) { return a *= c; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);

    friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

private:
    void canonicalize();

    std::vector<ExpTerm> terms_;
};

ExpPoly exppoly_mul(const ExpPoly& a, const ExpPoly& b);

/// a^power by binary exponentiation; power >= 1.
ExpPoly exppoly_pow(const ExpPoly& a, unsigned power);

/// Term-by-term derivative with respect to beta: (p' + rate p) e^{rate beta}.
ExpPoly exppoly_ddbeta(const ExpPoly& a);

/// a(factor * beta): rates multiply by factor, degree-k coefficients by factor^k.
ExpPoly exppoly_rescale(const ExpPoly& a, const Rational& factor);

/// Exact Taylor coefficients about beta = 0, degrees 0..order inclusive.
std::vector<Rational> exppoly_taylor(const ExpPoly& a, unsigned order);

/// Floating-point evaluation sum_i p_i(beta) exp(rate_i beta), Horner per term.
/// Expanded high powers can cancel badly; model code evaluates factored forms instead.
template <typename Scalar>
Scalar exppoly_eval(const ExpPoly& a, Scalar beta)
{
    using std::exp;
    Scalar total(0);
    for (const auto& t : a.terms()) {
        Scalar p(0);
        for (auto c = t.poly.rbegin(); c != t.poly.rend(); ++c) p = p * beta + Scalar(to_double(*c));
        total += p * exp(Scalar(to_double(t.rate)) * beta);
    }
    return total;
}

/// Leading behaviour as beta -> +inf: coeff * beta^degree * exp(rate beta).
struct DominantTerm {
    Rational rate;
    std::size_t degree;
    Rational coeff;
};

std::optional<DominantTerm> exppoly_dominant(const ExpPoly& a);

/// lim_{beta->inf} num/den when it is finite; nullopt if den is zero or the ratio diverges.
std::optional<Rational> exppoly_ratio_limit(const ExpPoly& num, const ExpPoly& den);

} // namespace tslice
