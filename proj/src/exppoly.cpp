#include "tslice/exppoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tslice {

namespace {

void trim(std::vector<Rational>& poly)
{
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

void add_into(std::vector<Rational>& acc, const std::vector<Rational>& p, const Rational& scale = 1)
{
    if (acc.size() < p.size()) acc.resize(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) acc[k] += scale * p[k];
}

std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Accumulates terms keyed by rate; the map's ordering gives the canonical sort.
using TermMap = std::map<Rational, std::vector<Rational>>;

std::vector<ExpTerm> drain(TermMap& m)
{
    std::vector<ExpTerm> out;
    out.reserve(m.size());
    for (auto& [rate, poly] : m) {
        trim(poly);
        if (!poly.empty()) out.push_back({std::move(poly), rate});
    }
    return out;
}

} // namespace

ExpPoly::ExpPoly(std::vector<ExpTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

ExpPoly ExpPoly::constant(const Rational& c) { return term({c}, Rational(0)); }

ExpPoly ExpPoly::monomial(const Rational& c, std::size_t degree, const Rational& rate)
{
    std::vector<Rational> poly(degree + 1);
    poly[degree] = c;
    return term(std::move(poly), rate);
}

ExpPoly ExpPoly::term(std::vector<Rational> poly, const Rational& rate)
{
    return ExpPoly({ExpTerm{std::move(poly), rate}});
}

void ExpPoly::canonicalize()
{
    TermMap merged;
    for (auto& t : terms_) {
        for (auto& c : t.poly) c.canonicalize();
        Rational rate = t.rate;
        rate.canonicalize();
        add_into(merged[rate], t.poly);
    }
    terms_ = drain(merged);
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other)
{
    TermMap merged;
    for (auto& t : terms_) merged.emplace(t.rate, std::move(t.poly));
    for (const auto& t : other.terms_) add_into(merged[t.rate], t.poly);
    terms_ = drain(merged);
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& other)
{
    TermMap merged;
    for (auto& t : terms_) merged.emplace(t.rate, std::move(t.poly));
    for (const auto& t : other.terms_) add_into(merged[t.rate], t.poly, Rational(-1));
    terms_ = drain(merged);
    return *this;
}

ExpPoly& ExpPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        for (auto& coeff : t.poly) coeff *= c;
    return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b)
{
    TermMap merged;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) add_into(merged[ta.rate + tb.rate], convolve(ta.poly, tb.poly));
    ExpPoly out;
    out.terms_ = drain(merged);
    return out;
}

ExpPoly exppoly_mul(const ExpPoly& a, const ExpPoly& b) { return a * b; }

ExpPoly exppoly_pow(const ExpPoly& a, unsigned power)
{
    if (power == 0) throw std::invalid_argument("exppoly_pow: power must be >= 1");
    ExpPoly result;
    bool have_result = false;
    ExpPoly base = a;
    while (power > 0) {
        if (power & 1u) {
            result = have_result ? result * base : base;
            have_result = true;
        }
        power >>= 1u;
        if (power > 0) base = base * base;
    }
    return result;
}

ExpPoly exppoly_ddbeta(const ExpPoly& a)
{
    std::vector<ExpTerm> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
        std::vector<Rational> d(t.poly.size());
        for (std::size_t k = 0; k < t.poly.size(); ++k) {
            d[k] += t.rate * t.poly[k];
            if (k > 0) d[k - 1] += Rational(static_cast<long>(k)) * t.poly[k];
        }
        out.push_back({std::move(d), t.rate});
    }
    return ExpPoly(std::move(out));
}

ExpPoly exppoly_rescale(const ExpPoly& a, const Rational& factor)
{
    if (factor == 0) {
        Rational at_zero;
        for (const auto& t : a.terms()) at_zero += t.poly.front();
        return ExpPoly::constant(at_zero);
    }
    std::vector<ExpTerm> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
        std::vector<Rational> poly(t.poly.size());
        Rational scale = 1;
        for (std::size_t k = 0; k < t.poly.size(); ++k) {
            poly[k] = t.poly[k] * scale;
            scale *= factor;
        }
        out.push_back({std::move(poly), t.rate * factor});
    }
    return ExpPoly(std::move(out));
}

std::vector<Rational> exppoly_taylor(const ExpPoly& a, unsigned order)
{
    // [beta^n] p(beta) e^{rate beta} = sum_k p_k rate^{n-k} / (n-k)!
    std::vector<Rational> inv_fact(order + 1);
    for (unsigned n = 0; n <= order; ++n) inv_fact[n] = Rational(mpz_class(1), factorial(n));

    std::vector<Rational> out(order + 1);
    for (const auto& t : a.terms()) {
        std::vector<Rational> rate_pow(order + 1);
        rate_pow[0] = 1;
        for (unsigned n = 1; n <= order; ++n) rate_pow[n] = rate_pow[n - 1] * t.rate;
        for (unsigned n = 0; n <= order; ++n)
            for (std::size_t k = 0; k <= n && k < t.poly.size(); ++k)
                out[n] += t.poly[k] * rate_pow[n - k] * inv_fact[n - k];
    }
    for (auto& c : out) c.canonicalize();
    return out;
}

std::optional<DominantTerm> exppoly_dominant(const ExpPoly& a)
{
    if (a.is_zero()) return std::nullopt;
    const auto& top = a.terms().back();
    return DominantTerm{top.rate, top.poly.size() - 1, top.poly.back()};
}

std::optional<Rational> exppoly_ratio_limit(const ExpPoly& num, const ExpPoly& den)
{
    auto d = exppoly_dominant(den);
    if (!d) return std::nullopt;
    auto n = exppoly_dominant(num);
    if (!n) return Rational(0);
    if (n->rate < d->rate || (n->rate == d->rate && n->degree < d->degree)) return Rational(0);
    if (n->rate == d->rate && n->degree == d->degree) return Rational(n->coeff / d->coeff);
    return std::nullopt;
}

} // namespace tslice
