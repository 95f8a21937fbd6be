#include "tslice/json_io.hpp"

#include <stdexcept>

namespace tslice {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_string())
        throw std::invalid_argument(std::string("expected rational string field '") + key + "'");
    return parse_rational(j.at(key).get<std::string>());
}

} // namespace

json to_json(std::span<const Rational> coeffs)
{
    json arr = json::array();
    for (const auto& c : coeffs) arr.push_back(to_string(c));
    return arr;
}

json to_json(const ExpPoly& a)
{
    json terms = json::array();
    for (const auto& t : a.terms()) terms.push_back({{"poly", to_json(t.poly)}, {"rate", to_string(t.rate)}});
    return {{"terms", terms}};
}

json to_json(const DeltaComb& comb)
{
    json terms = json::array();
    for (const auto& t : comb.terms())
        terms.push_back({{"center", to_string(t.center)}, {"order", t.order}, {"coeff", to_string(t.coeff)}});
    return {{"terms", terms}};
}

ExpPoly exppoly_from_json(const json& j)
{
    std::vector<ExpTerm> terms;
    for (const auto& t : j.at("terms")) {
        ExpTerm term;
        for (const auto& c : t.at("poly")) term.poly.push_back(parse_rational(c.get<std::string>()));
        term.rate = rational_field(t, "rate");
        terms.push_back(std::move(term));
    }
    return ExpPoly(std::move(terms));
}

DeltaComb comb_from_json(const json& j)
{
    std::vector<DeltaTerm> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({rational_field(t, "center"), t.at("order").get<unsigned>(), rational_field(t, "coeff")});
    return DeltaComb(std::move(terms));
}

} // namespace tslice
