#pragma once

#include "doctest.h"
#include "padic/cyclotomic.hpp"
#include "padic/rational.hpp"

namespace doctest {
template <>
struct StringMaker<padic::CyclotomicValue> {
  static String convert(const padic::CyclotomicValue& v) { return v.str().c_str(); }
};
template <>
struct StringMaker<padic::Rational> {
  static String convert(const padic::Rational& v) { return v.str().c_str(); }
};
}  // namespace doctest
