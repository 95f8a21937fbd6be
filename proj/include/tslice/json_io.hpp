#pragma once

#include "tslice/delta_comb.hpp"
#include "tslice/exppoly.hpp"

#include <json.hpp>

// Rationals travel as "p/q" strings so nothing is rounded on the way out.
//   DeltaComb: {"terms":[{"center":"-1/4","order":1,"coeff":"1"}]}
//   ExpPoly:   {"terms":[{"poly":["1","1/2"],"rate":"1/4"}]}
namespace tslice {

nlohmann::json to_json(const ExpPoly& a);
nlohmann::json to_json(const DeltaComb& comb);

ExpPoly exppoly_from_json(const nlohmann::json& j);
DeltaComb comb_from_json(const nlohmann::json& j);

nlohmann::json to_json(std::span<const Rational> coeffs);

} // namespace tslice
