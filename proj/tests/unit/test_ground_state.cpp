#include <doctest.h>

#include <random>

#include "inls/ground_state.hpp"
#include "support/oracles.hpp"

using namespace inls;

namespace {

const GroundStateProfile& profile_for(const Rational& b) {
  static std::map<std::string, GroundStateProfile> cache;
  const std::string key = to_string(b);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, solve_petviashvili(InlsParams(b), make_grid(32.0, 16383, b))).first;
  return it->second;
}

}  // namespace

TEST_CASE("Pohozaev ratio at b = 0 and b = 1/4") {
  const auto& q0 = profile_for(Rational(0));
  CHECK(q0.grad_sq / q0.mass == doctest::Approx(3.0).epsilon(1e-6));
  const auto& q1 = profile_for(Rational(1, 4));
  CHECK(q1.grad_sq / q1.mass == doctest::Approx(13.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("profile is positive, decreasing, small residual") {
  const auto& q = profile_for(Rational(1, 4));
  CHECK(q.residual < 1e-8);
  double prev = 1e300;
  for (size_t j = 0; j < q.q.size(); ++j) {
    CHECK(q.q[j] > 0.0);
    if (q.q[j] > 1e-12 * q.q[0]) CHECK(q.q[j] < prev);
    prev = q.q[j];
  }
}

TEST_CASE("ground-state identities") {
  for (const Rational& b : {Rational(0), Rational(1, 10), Rational(1, 4)}) {
    const auto& q = profile_for(b);
    const double bd = to_double(b);
    const double sc = 0.5 * (1.0 + bd);
    CHECK(q.grad_sq / q.mass == doctest::Approx((3.0 + bd) / (1.0 - bd)).epsilon(1e-6));
    CHECK(q.potential == doctest::Approx(4.0 / (3.0 + bd) * q.grad_sq).epsilon(1e-6));
    CHECK(q.energy == doctest::Approx(sc / (3.0 + bd) * q.grad_sq).epsilon(1e-6));
  }
}

TEST_CASE("the two sharp-constant evaluations agree") {
  for (const Rational& b : {Rational(0), Rational(1, 4)}) {
    const GnConstant c = gn_constant(profile_for(b));
    CHECK(c.direct == doctest::Approx(c.closed).epsilon(1e-5));
    const double bd = to_double(b);
    const double sc = 0.5 * (1.0 + bd);
    // closed form in terms of ||Q||^2 alone
    const double via_mass = 4.0 / (3.0 + bd) * std::pow((1.0 - bd) / (3.0 + bd), sc) /
                            profile_for(b).mass;
    CHECK(c.closed == doctest::Approx(via_mass).epsilon(1e-5));
  }
}

TEST_CASE("solver error paths") {
  const InlsParams params(Rational(1, 4));
  CHECK_THROWS_AS(solve_petviashvili(params, make_grid(32.0, 1023, params.b), 1e-8, 3),
                  NoConvergence);
  CHECK_THROWS_AS(solve_petviashvili(params, make_grid(32.0, 1023, Rational(1, 5))),
                  std::invalid_argument);
  ShootingOptions bad;
  bad.alpha_lo = 0.01;
  bad.alpha_hi = 0.02;  // both on the rebound side
  CHECK_THROWS_AS(shooting_oracle(params, *make_grid(32.0, 1023, params.b), bad), BracketFailure);
}

TEST_CASE("shooting oracle profile is positive and decreasing") {
  const InlsParams params(Rational(1, 4));
  auto grid = make_grid(32.0, 2047, params.b);
  const ShootingProfile shot = shooting_oracle(params, *grid);
  CHECK(shot.alpha > 1.0);
  CHECK(shot.r_stop > 8.0);
  double prev = 1e300;
  for (size_t j = 0; j < shot.q.size(); ++j) {
    if (grid->nodes()[j] >= shot.r_stop) break;
    CHECK(shot.q[j] >= 0.0);
    if (shot.q[j] > 1e-10 * shot.q[0]) CHECK(shot.q[j] < prev);
    prev = shot.q[j];
  }
}

TEST_CASE("shooting oracle: Pohozaev ratio from independent quadrature") {
  const InlsParams params(Rational(1, 4));
  auto grid = make_grid(32.0, 8191, params.b);
  const ShootingProfile shot = shooting_oracle(params, *grid);
  // finite-difference gradient of the sampled profile, trapezoid quadrature
  const auto& r = grid->nodes();
  double mass_sum = 0.0, grad_sum = 0.0;
  for (size_t j = 0; j + 1 < shot.q.size(); ++j) {
    if (r[j + 1] >= shot.r_stop) break;
    const double dq = (shot.q[j + 1] - shot.q[j]) / grid->dr();
    const double rm = 0.5 * (r[j] + r[j + 1]);
    const double qm = 0.5 * (shot.q[j] + shot.q[j + 1]);
    grad_sum += dq * dq * rm * rm;
    mass_sum += qm * qm * rm * rm;
  }
  CHECK(grad_sum / mass_sum == doctest::Approx(13.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("Petviashvili and shooting cross-validate") {
  for (const Rational& b : {Rational(0), Rational(1, 4)}) {
    const auto& pet = profile_for(b);
    const ShootingProfile shot = shooting_oracle(InlsParams(b), *pet.grid);

    double max_diff = 0.0, max_q = 0.0;
    for (size_t j = 0; j < pet.q.size(); ++j) {
      max_q = std::max(max_q, shot.q[j]);
      if (shot.q[j] > 1e-8 * shot.q[0])
        max_diff = std::max(max_diff, std::abs(pet.q[j] - shot.q[j]));
    }
    CHECK(max_diff / max_q < 1e-4);

    std::vector<double> q2(shot.q.size());
    for (size_t j = 0; j < shot.q.size(); ++j) q2[j] = shot.q[j] * shot.q[j];
    const double shot_mass = integrate(*pet.grid, q2);
    CHECK(pet.mass == doctest::Approx(shot_mass).epsilon(1e-5));
  }
}

TEST_CASE("nothing beats the sharp constant") {
  const auto& q = profile_for(Rational(1, 4));
  const double c = gn_constant(q).closed;
  auto grid = make_grid(16.0, 1023, Rational(1, 4));
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = testing::random_field(grid, rng);
    const double pot = potential_term(f);
    const double bound = c * std::pow(grad_sq(f), 0.5 * 3.25) * std::pow(mass(f), 0.5 * 0.75);
    CHECK(pot <= bound + 1e-8);
  }
}

TEST_CASE("threshold product is stable under grid refinement") {
  const Rational b(1, 4);
  const auto coarse = solve_petviashvili(InlsParams(b), make_grid(32.0, 16383, b));
  const auto fine = solve_petviashvili(InlsParams(b), make_grid(32.0, 32767, b));
  CHECK(coarse.threshold_me == doctest::Approx(fine.threshold_me).epsilon(1e-6));
}
