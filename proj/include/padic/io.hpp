#pragma once

#include <json.hpp>

#include "padic/cyclotomic.hpp"
#include "padic/schwartz.hpp"

namespace padic {

// Rationals as "a/b" strings (or plain integers); cyclotomic values either as
// a rational or {"p", "K", "terms": [[t, c], ...]} with t a residue mod 8p^K,
// i.e. the coefficient list on ζ_N^t.
nlohmann::json to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CyclotomicValue& v);
CyclotomicValue cyclotomic_from_json(const nlohmann::json& j);

// {p, n, M, m, measure_scale, entries: [{digits, value}]}; omitted cells are 0.
nlohmann::json to_json(const SchwartzFunction& f);
SchwartzFunction schwartz_from_json(const nlohmann::json& j);

Rational parse_rational(const std::string& s);

}  // namespace padic
