#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace arsg {

// Exact probabilities and scores. Counts in this toolkit stay far below the
// 64-bit range, so overflow is not a practical concern.
using Rational = boost::rational<std::int64_t>;

// "n/d", or "n" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "n", "n/d" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace arsg
