#include <doctest.h>

#include "inls/exponents.hpp"

using namespace inls;

TEST_CASE("critical index") {
  CHECK(critical_index(Rational(0)) == Rational(1, 2));
  CHECK(critical_index(Rational(3, 10)) == Rational(13, 20));
  CHECK_THROWS_AS(critical_index(Rational(1, 2)), OutOfRange);
  CHECK_THROWS_AS(critical_index(Rational(-1, 10)), OutOfRange);
  CHECK_THROWS_AS(critical_index(Rational(7, 10)), OutOfRange);
}

TEST_CASE("admissible pairs") {
  const InlsParams params(Rational(1, 4));
  CHECK(check_admissible({std::nullopt, Rational(2), PairClass::L2}, params));
  CHECK(check_admissible({Rational(10, 3), Rational(10, 3), PairClass::L2}, params));
  CHECK_FALSE(check_admissible({Rational(4), Rational(4), PairClass::L2}, params));
  // infinity is only meaningful in the L2 class
  CHECK_FALSE(check_admissible({std::nullopt, Rational(24, 7), PairClass::HsDot}, params));
  CHECK_FALSE(check_admissible({std::nullopt, Rational(24, 7), PairClass::HsDotDual}, params));
  // r out of range fails even when the scaling relation holds
  CHECK_FALSE(check_admissible({Rational(1), Rational(6), PairClass::HsDot},
                               InlsParams(Rational(0))));
}

TEST_CASE("working exponents at b = 1/4, theta = 1") {
  const InlsParams params(Rational(1, 4));
  const WorkingExponents w = working_exponents(params, Rational(1));
  CHECK(w.q_hat == Rational(16, 7));
  CHECK(w.r_hat == Rational(24, 5));
  CHECK(w.a_hat == Rational(8));
  // scaling relation of the L2 pair, cleared to integers
  CHECK(Rational(2) / w.q_hat == Rational(3, 2) - Rational(3) / w.r_hat);
  CHECK_THROWS_AS(working_exponents(params, Rational(2)), InfeasibleTheta);
  CHECK_THROWS_AS(working_exponents(params, Rational(0)), InfeasibleTheta);
}

TEST_CASE("theta range") {
  CHECK(theta_range(Rational(1, 4)).hi == Rational(1, 3));
  CHECK(theta_range(Rational(49, 100)).hi == Rational(1, 51));
  CHECK(theta_range(Rational(0)).hi == Rational(1, 2));
  CHECK(theta_range(Rational(1, 4)).binding == ThetaConstraint::AuxiliaryPairRange);
  CHECK_THROWS_AS(theta_range(Rational(1, 2)), EmptyRange);
  CHECK_THROWS_AS(theta_range(Rational(3, 4)), EmptyRange);
}

TEST_CASE("memberships hold across the whole (b, theta) family") {
  for (long long num = 1; num <= 49; ++num) {
    const Rational b(num, 100);
    const InlsParams params(b);
    const ThetaRange range = theta_range(b);
    for (long long i = 1; i <= 24; ++i) {
      const Rational theta = range.lo + (range.hi - range.lo) * Rational(i, 25);
      const WorkingExponents w = working_exponents(params, theta);
      CHECK(check_admissible({w.q_hat, w.r_hat, PairClass::L2}, params));
      CHECK(check_admissible({w.a_hat, w.r_hat, PairClass::HsDot}, params));
      CHECK(check_admissible({w.a_tilde, w.r_hat, PairClass::HsDotDual}, params));
    }
  }
}

TEST_CASE("theta range is antitone in b") {
  ThetaRange prev = theta_range(Rational(1, 100));
  for (long long num = 2; num <= 49; ++num) {
    const ThetaRange cur = theta_range(Rational(num, 100));
    CHECK(cur.hi <= prev.hi);
    prev = cur;
  }
}

TEST_CASE("L2 check equals the cleared-denominator integer identity") {
  // 2/q = 3/2 - 3/r over positive rationals q = qn/qd, r = rn/rd clears to
  // 4 qd rn = 3 qn (rn - 2 rd), with 2 <= r <= 6 as 2 rd <= rn <= 6 rd.
  const InlsParams params(Rational(1, 4));
  std::vector<std::pair<Rational, Rational>> samples;
  for (long long qn = 1; qn <= 12; ++qn)
    for (long long rn = 1; rn <= 12; ++rn) samples.push_back({Rational(qn, 3), Rational(rn, 2)});
  for (const auto& [q, r] : samples) {
    const long long qn = q.numerator(), qd = q.denominator();
    const long long rn = r.numerator(), rd = r.denominator();
    const bool integer_identity =
        (4 * qd * rn == 3 * qn * (rn - 2 * rd)) && (2 * rd <= rn) && (rn <= 6 * rd);
    CHECK(check_admissible({q, r, PairClass::L2}, params) == integer_identity);
  }
}
