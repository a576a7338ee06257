#pragma once

#include <map>
#include <string>

#include "ehrhart/exactmath.hpp"
#include "ehrhart/numeric.hpp"

namespace ehrhart::testing {

// Builds a FracPoly from {"exponent": coefficient} pairs, e.g. {{"0", 1}, {"1/2", 2}}.
inline FracPoly frac(const std::map<std::string, long long>& terms) {
  FracPoly out;
  for (const auto& [e, c] : terms) out = out + FracPoly::monomial(c, parse_rational(e));
  return out;
}

}  // namespace ehrhart::testing
