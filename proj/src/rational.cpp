#include "tslice/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tslice {

Rational make_rational(long num, long den)
{
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    long exponent = 0;
    if (auto epos = body.find_first_of("eE"); epos != std::string_view::npos) {
        std::string_view exp_part = body.substr(epos + 1);
        body = body.substr(0, epos);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
    }

    std::string digits;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        digits = std::string(body);
    }

    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash));
        Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
        return num / den;
    }
    return parse_decimal(text);
}

std::string to_string(const Rational& q) { return q.get_str(); }

mpz_class floor(const Rational& q)
{
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

mpz_class factorial(unsigned long n)
{
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Rational pow(const Rational& q, unsigned long k)
{
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
    return Rational(num, den); // already coprime
}

} // namespace tslice
