#pragma once

#include <optional>
#include <stdexcept>

#include "inls/rational.hpp"

namespace inls {

struct OutOfRange : std::domain_error {
  using std::domain_error::domain_error;
};
struct InfeasibleTheta : std::domain_error {
  using std::domain_error::domain_error;
};
struct EmptyRange : std::domain_error {
  using std::domain_error::domain_error;
};

// s_c = (1+b)/2. Valid for 0 <= b < 1/2; b = 0 is the classical NLS
// baseline and is admitted everywhere.
Rational critical_index(const Rational& b);

struct InlsParams {
  Rational b;
  Rational s_c;

  explicit InlsParams(const Rational& b_arg) : b(b_arg), s_c(critical_index(b_arg)) {}
};

enum class PairClass { L2, HsDot, HsDotDual };

// A space-time exponent pair (q, r). q == nullopt encodes q = infinity,
// which is meaningful for the L2 class only.
struct ExponentPair {
  std::optional<Rational> q;
  Rational r;
  PairClass cls = PairClass::L2;
};

// Exact check of the scaling relation and range constraints:
//   L2:        2/q = 3/2 - 3/r,        2 <= r <= 6
//   HsDot:     2/q = 3/2 - 3/r - s_c,  6/(3-2s_c) <= r < 6
//   HsDotDual: 2/q = 3/2 - 3/r + s_c,  6/(3-2s_c) <  r < 6
bool check_admissible(const ExponentPair& pair, const InlsParams& params);

struct WorkingExponents {
  Rational theta;
  Rational q_hat;
  Rational r_hat;
  Rational a_tilde;
  Rational a_hat;
};

// Evaluates
//   q_hat   = 4(4-t) / (6+2b - t(1+b))
//   r_hat   = 6(4-t) / (2(3-b) - t(2-b))
//   a_tilde = 2(4-t) / ((7+2b-3t) - (2-b)(1-t))
//   a_hat   = 2(4-t) / (1-b)
// and verifies the three memberships: (q_hat, r_hat) L2-admissible,
// (a_hat, r_hat) HsDot-admissible, (a_tilde, r_hat) HsDotDual-admissible.
// Throws InfeasibleTheta when theta is outside (0, 2) or any membership
// fails.
WorkingExponents working_exponents(const InlsParams& params, const Rational& theta);

enum class ThetaConstraint {
  AuxiliaryPairRange,  // t(2-2b) < 1-2b, keeps the auxiliary weighted pair below r = 6
  Interpolation,       // t < 2/3, needed for the L^p interpolation step
};

struct ThetaRange {
  Rational lo;  // open interval (lo, hi)
  Rational hi;
  ThetaConstraint binding;

  bool empty() const { return hi <= lo; }
  bool contains(const Rational& theta) const { return theta > lo && theta < hi; }
};

// The open interval of usable theta. Throws EmptyRange when b >= 1/2
// (the interval closes exactly there) and OutOfRange for b < 0.
ThetaRange theta_range(const Rational& b);
inline ThetaRange theta_range(const InlsParams& params) { return theta_range(params.b); }

const char* theta_constraint_name(ThetaConstraint c);
const char* pair_class_name(PairClass c);

}  // namespace inls
