#pragma once

#include <boost/rational.hpp>
#include <string>

namespace inls {

// All exponent bookkeeping is exact; nothing in the exponents module may
// touch floating point.
using Rational = boost::rational<long long>;

// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument on
// anything else (decimals are deliberately rejected).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);

inline double to_double(const Rational& x) {
  return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

}  // namespace inls
