#include "inls/ground_state.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace inls {

namespace {

double pow_d(double base, double e) { return std::pow(base, e); }

}  // namespace

ComplexRadialField GroundStateProfile::field() const {
  std::vector<Complex> u(q.size());
  for (size_t j = 0; j < q.size(); ++j) u[j] = Complex(q[j], 0.0);
  return ComplexRadialField::from_u_samples(grid, u);
}

GroundStateProfile solve_petviashvili(const InlsParams& params,
                                      std::shared_ptr<const RadialGrid> grid, double tol,
                                      int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (params.b != grid->b()) throw std::invalid_argument("grid weight does not match params");

  const int n = grid->n();
  const auto& r = grid->nodes();
  const auto& k = grid->wavenumbers();
  const auto& w = grid->weight();
  const double norm = grid->mode_norm();

  // Everything real: the iteration preserves realness and positivity.
  std::vector<double> v(n), nl(n), vhat(n), nlhat(n), resid(n);
  for (int j = 0; j < n; ++j) v[j] = 3.0 * r[j] * std::exp(-r[j] * r[j]);
  grid->sine_transform(v.data(), vhat.data());
  for (double& c : vhat) c /= norm;

  double s_factor = 0.0;
  double residual_max = 0.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    // v-representation of r^{-b} u^3: w * v^3 / r^2
    for (int j = 0; j < n; ++j) nl[j] = w[j] * v[j] * v[j] * v[j] / (r[j] * r[j]);
    grid->sine_transform(nl.data(), nlhat.data());
    for (double& c : nlhat) c /= norm;

    // Parseval makes these the same inner products as the physical sums.
    double num = 0.0, den = 0.0;
    for (int m = 0; m < n; ++m) {
      num += (1.0 + k[m] * k[m]) * vhat[m] * vhat[m];
      den += vhat[m] * nlhat[m];
    }
    if (den <= 0.0) throw NegativeValues("Petviashvili ratio lost positivity");
    s_factor = num / den;

    const double gamma = std::pow(s_factor, 1.5);
    for (int m = 0; m < n; ++m) vhat[m] = gamma * nlhat[m] / (1.0 + k[m] * k[m]);
    grid->sine_transform(vhat.data(), v.data());
    for (double& x : v) x *= 0.5;

    double vmax = 0.0, vmin = 0.0;
    for (double x : v) {
      vmax = std::max(vmax, x);
      vmin = std::min(vmin, x);
    }
    if (vmin < -1e-10 * vmax) throw NegativeValues("Petviashvili iterate went negative");

    // Residual of the discrete equation, measured in u-space max-norm.
    for (int j = 0; j < n; ++j) nl[j] = w[j] * v[j] * v[j] * v[j] / (r[j] * r[j]);
    std::vector<double> lap(n);
    for (int m = 0; m < n; ++m) lap[m] = -k[m] * k[m] * vhat[m];
    grid->sine_transform(lap.data(), resid.data());
    residual_max = 0.0;
    for (int j = 0; j < n; ++j) {
      const double res_v = -v[j] + 0.5 * resid[j] + nl[j];
      residual_max = std::max(residual_max, std::abs(res_v) / r[j]);
    }
    if (std::abs(s_factor - 1.0) < tol && residual_max < tol) break;
  }
  if (it == max_iter)
    throw NoConvergence("Petviashvili did not converge in " + std::to_string(max_iter) +
                        " iterations (|S-1| = " + std::to_string(std::abs(s_factor - 1.0)) +
                        ", residual = " + std::to_string(residual_max) + ")");

  GroundStateProfile profile{.params = params, .grid = grid};
  profile.iterations = it + 1;
  profile.q.resize(n);
  for (int j = 0; j < n; ++j) profile.q[j] = v[j] / r[j];
  profile.residual = residual_max;

  const ComplexRadialField qf = profile.field();
  profile.mass = mass(qf);
  profile.grad_sq = grad_sq(qf);
  profile.potential = potential_term(qf);
  profile.energy = 0.5 * profile.grad_sq - 0.25 * profile.potential;

  const double sc = grid->s_c();
  profile.threshold_me = pow_d(profile.energy, sc) * pow_d(profile.mass, 1.0 - sc);
  profile.threshold_grad = pow_d(profile.grad_sq, 0.5 * sc) * pow_d(profile.mass, 0.5 * (1.0 - sc));
  const double b = grid->b_value();
  profile.c_gn = 4.0 / ((3.0 + b) * pow_d(profile.grad_sq, sc) * pow_d(profile.mass, 1.0 - sc));
  return profile;
}

GroundStateProfile solve_ground_state(const InlsParams& params, double tol) {
  return solve_petviashvili(params, make_grid(kDefaultGroundStateRmax, kDefaultGroundStateN, params.b),
                            tol);
}

namespace {

using OdeState = std::array<double, 2>;

enum class ShotOutcome { CrossedZero, Rebounded, Undecided };

struct ShotResult {
  ShotOutcome outcome;
  double r_stop;
};

// Integrate one trial trajectory. The sampler, when given, receives dense
// output so the profile can be read off at the grid nodes.
template <typename Sampler>
ShotResult integrate_shot(double b, double alpha, const ShootingOptions& opt, Sampler&& sample) {
  namespace odeint = boost::numeric::odeint;
  auto rhs = [b](const OdeState& y, OdeState& dy, double r) {
    dy[0] = y[1];
    dy[1] = y[0] - std::pow(r, -b) * y[0] * y[0] * y[0] - 2.0 * y[1] / r;
  };

  auto stepper = odeint::make_dense_output(1e-12, 1e-14,
                                           odeint::runge_kutta_dopri5<OdeState>());
  OdeState y{alpha, 0.0};
  stepper.initialize(y, opt.r_start, 1e-7);

  while (stepper.current_time() < opt.r_end) {
    stepper.do_step(rhs);
    const double r_now = stepper.current_time();
    const OdeState& y_now = stepper.current_state();
    sample(stepper, r_now);
    if (y_now[0] < 0.0) return {ShotOutcome::CrossedZero, r_now};
    // Rising while positive means the trajectory left the decaying
    // separatrix on the small-alpha side (it relaxes toward the
    // quasi-equilibrium instead of diverging; see also the 10*alpha guard).
    if (y_now[1] > 0.0) return {ShotOutcome::Rebounded, r_now};
    if (y_now[0] > 10.0 * alpha) return {ShotOutcome::Rebounded, r_now};
  }
  return {ShotOutcome::Undecided, opt.r_end};
}

ShotOutcome classify_shot(double b, double alpha, const ShootingOptions& opt) {
  return integrate_shot(b, alpha, opt, [](const auto&, double) {}).outcome;
}

}  // namespace

ShootingProfile shooting_oracle(const InlsParams& params, const RadialGrid& grid,
                                const ShootingOptions& opt) {
  const double b = to_double(params.b);
  double lo = opt.alpha_lo, hi = opt.alpha_hi;

  const ShotOutcome c_lo = classify_shot(b, lo, opt);
  const ShotOutcome c_hi = classify_shot(b, hi, opt);
  if (c_lo != ShotOutcome::Rebounded || c_hi != ShotOutcome::CrossedZero)
    throw BracketFailure("initial bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "] does not straddle the separatrix");

  int bisections = 0;
  while (hi - lo > opt.tol * lo) {
    const double mid = 0.5 * (lo + hi);
    const ShotOutcome c = classify_shot(b, mid, opt);
    // An undecided trajectory tracked the separatrix past r_end; treat it
    // as the crossing side so the bracket keeps shrinking.
    if (c == ShotOutcome::Rebounded)
      lo = mid;
    else
      hi = mid;
    ++bisections;
  }
  const double alpha = 0.5 * (lo + hi);

  ShootingProfile profile;
  profile.alpha = alpha;
  profile.bisections = bisections;
  profile.q.assign(grid.n(), 0.0);

  const auto& r = grid.nodes();
  size_t next = 0;
  double prev_r = opt.r_start;
  auto sample = [&](const auto& stepper, double r_now) {
    OdeState y;
    while (next < r.size() && r[next] <= r_now) {
      if (r[next] >= prev_r) {
        stepper.calc_state(r[next], y);
        profile.q[next] = std::max(y[0], 0.0);
      }
      ++next;
    }
    prev_r = r_now;
  };
  const ShotResult run = integrate_shot(b, alpha, opt, sample);
  profile.r_stop = run.r_stop;
  // Zero out anything recorded past the cut, including the final partial step.
  for (size_t j = 0; j < r.size(); ++j)
    if (r[j] >= profile.r_stop) profile.q[j] = 0.0;
  return profile;
}

GnConstant gn_constant(const GroundStateProfile& profile) {
  const double b = profile.grid->b_value();
  const double sc = profile.grid->s_c();
  GnConstant c;
  c.direct = profile.potential /
             (pow_d(profile.grad_sq, 0.5 * (3.0 + b)) * pow_d(profile.mass, 0.5 * (1.0 - b)));
  c.closed = 4.0 / ((3.0 + b) * pow_d(profile.grad_sq, sc) * pow_d(profile.mass, 1.0 - sc));
  return c;
}

}  // namespace inls
