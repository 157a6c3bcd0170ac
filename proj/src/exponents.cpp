#include "inls/exponents.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace inls {

Rational parse_rational(const std::string& text) {
  auto parse_int = [](std::string_view s) {
    long long value = 0;
    if (s.empty()) throw std::invalid_argument("empty integer in rational");
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const long long num = parse_int(std::string_view(text).substr(0, slash));
  const long long den = parse_int(std::string_view(text).substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

Rational critical_index(const Rational& b) {
  if (b < Rational(0) || b >= Rational(1, 2))
    throw OutOfRange("b must satisfy 0 <= b < 1/2, got " + to_string(b));
  return (Rational(1) + b) / 2;
}

namespace {

// 2/q with q = infinity encoded as nullopt.
Rational two_over(const std::optional<Rational>& q) {
  if (!q) return Rational(0);
  return Rational(2) / *q;
}

}  // namespace

bool check_admissible(const ExponentPair& pair, const InlsParams& params) {
  if (pair.q && *pair.q <= Rational(0)) return false;
  if (pair.r <= Rational(0)) return false;
  const Rational scaling = Rational(3, 2) - Rational(3) / pair.r;
  switch (pair.cls) {
    case PairClass::L2:
      return two_over(pair.q) == scaling && Rational(2) <= pair.r && pair.r <= Rational(6);
    case PairClass::HsDot: {
      if (!pair.q) return false;  // (inf, 6/(3-2s)) is excluded by convention
      const Rational r_lo = Rational(6) / (Rational(3) - 2 * params.s_c);
      return two_over(pair.q) == scaling - params.s_c && r_lo <= pair.r && pair.r < Rational(6);
    }
    case PairClass::HsDotDual: {
      if (!pair.q) return false;
      const Rational r_lo = Rational(6) / (Rational(3) - 2 * params.s_c);
      return two_over(pair.q) == scaling + params.s_c && r_lo < pair.r && pair.r < Rational(6);
    }
  }
  return false;
}

WorkingExponents working_exponents(const InlsParams& params, const Rational& theta) {
  if (theta <= Rational(0) || theta >= Rational(2))
    throw InfeasibleTheta("theta must lie in (0, 2), got " + to_string(theta));
  const Rational& b = params.b;
  const Rational four_minus = Rational(4) - theta;

  WorkingExponents w;
  w.theta = theta;
  w.q_hat = 4 * four_minus / (Rational(6) + 2 * b - theta * (Rational(1) + b));
  w.r_hat = 6 * four_minus / (2 * (Rational(3) - b) - theta * (Rational(2) - b));
  w.a_tilde = 2 * four_minus /
              ((Rational(7) + 2 * b - 3 * theta) - (Rational(2) - b) * (Rational(1) - theta));
  w.a_hat = 2 * four_minus / (Rational(1) - b);

  const bool ok =
      check_admissible({w.q_hat, w.r_hat, PairClass::L2}, params) &&
      check_admissible({w.a_hat, w.r_hat, PairClass::HsDot}, params) &&
      check_admissible({w.a_tilde, w.r_hat, PairClass::HsDotDual}, params);
  if (!ok)
    throw InfeasibleTheta("theta = " + to_string(theta) +
                          " breaks an admissibility membership at b = " + to_string(b));
  return w;
}

ThetaRange theta_range(const Rational& b) {
  if (b < Rational(0)) throw OutOfRange("b must be nonnegative, got " + to_string(b));
  if (b >= Rational(1, 2))
    throw EmptyRange("theta interval is empty for b = " + to_string(b) + " (needs b < 1/2)");
  // t(2-2b) < 1-2b from the auxiliary pair, t < 2/3 from interpolation,
  // t < 2 from the working exponents themselves (never the minimum here).
  const Rational aux = (Rational(1) - 2 * b) / (Rational(2) - 2 * b);
  const Rational interp(2, 3);
  ThetaRange range;
  range.lo = Rational(0);
  if (aux <= interp) {
    range.hi = aux;
    range.binding = ThetaConstraint::AuxiliaryPairRange;
  } else {
    range.hi = interp;
    range.binding = ThetaConstraint::Interpolation;
  }
  return range;
}

const char* theta_constraint_name(ThetaConstraint c) {
  switch (c) {
    case ThetaConstraint::AuxiliaryPairRange: return "auxiliary-pair-range";
    case ThetaConstraint::Interpolation: return "interpolation";
  }
  return "?";
}

const char* pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::L2: return "L2";
    case PairClass::HsDot: return "Hs";
    case PairClass::HsDotDual: return "Hs-dual";
  }
  return "?";
}

}  // namespace inls
