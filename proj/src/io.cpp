#include "padic/io.hpp"

#include <charconv>

#include "padic/errors.hpp"

namespace padic {

using nlohmann::json;

Rational parse_rational(const std::string& s) {
  auto to_i64 = [&](std::string_view t) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
      throw DomainError("malformed rational: '" + s + "'");
    return v;
  };
  std::string_view v(s);
  auto slash = v.find('/');
  if (slash == std::string_view::npos) return Rational(to_i64(v));
  return Rational(to_i64(v.substr(0, slash)), to_i64(v.substr(slash + 1)));
}

json to_json(const Rational& r) {
  if (r.den() == 1) return r.num();
  return r.str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("expected a rational, got " + j.dump());
}

json to_json(const CyclotomicValue& v) {
  if (v.is_rational()) return to_json(v.rational_value());
  json terms = json::array();
  for (const auto& [t, c] : v.residue_terms()) terms.push_back({t, to_json(c)});
  return {{"p", v.prime()}, {"K", v.level()}, {"terms", terms}};
}

CyclotomicValue cyclotomic_from_json(const json& j) {
  if (!j.is_object()) return CyclotomicValue(rational_from_json(j));
  std::vector<std::pair<int64_t, Rational>> terms;
  for (const auto& t : j.at("terms")) terms.emplace_back(t.at(0).get<int64_t>(), rational_from_json(t.at(1)));
  return CyclotomicValue::from_residues(j.value("p", 0), j.value("K", 0), terms);
}

json to_json(const SchwartzFunction& f) {
  json entries = json::array();
  for (std::size_t i = 0; i < f.cells(); ++i)
    if (!f.at(i).is_zero()) entries.push_back({{"digits", f.digits_of(i)}, {"value", to_json(f.at(i))}});
  return {{"p", f.prime()},           {"n", f.dim()},
          {"M", f.outer()},           {"m", f.inner()},
          {"measure_scale", f.measure().scale}, {"entries", entries}};
}

SchwartzFunction schwartz_from_json(const json& j) {
  const int p = j.at("p").get<int>(), n = j.at("n").get<int>();
  SchwartzFunction f(p, n, j.at("M").get<int>(), j.at("m").get<int>(), HaarMeasure{j.value("measure_scale", 0)});
  for (const auto& e : j.value("entries", json::array())) {
    auto d = e.at("digits").get<std::vector<int64_t>>();
    if (static_cast<int>(d.size()) != n) throw DomainError("entry digit vector has the wrong length");
    for (auto x : d)
      if (x < 0 || x >= f.side()) throw DomainError("entry digit out of window");
    f.set(f.index_of(d), cyclotomic_from_json(e.at("value")));
  }
  return f;
}

}  // namespace padic
