#pragma once

// Test-only oracles, independent of the library's spectral/quadrature path.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "inls/field.hpp"

namespace inls::testing {

// Adaptive Simpson on (a, b]; handles mildly singular integrands such as
// r^{-b} near 0 by bisection depth alone.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 60) {
  struct Impl {
    const std::function<double(double)>& f;
    double run(double a, double fa, double b, double fb, double fm, double whole, double tol,
               int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return run(a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
             run(m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Impl{f}.run(a, fa, b, fb, fm, whole, tol, depth);
}

// Radial volume integral 4 pi int_0^R f(r) r^2 dr with a graded start to
// keep singular weights out of the first Simpson panel.
inline double radial_integral(const std::function<double(double)>& f, double r_end,
                              double tol = 1e-12) {
  constexpr double kPi = 3.14159265358979323846;
  const auto g = [&f](double r) { return f(r) * r * r; };
  double total = 0.0;
  double a = 1e-10;
  for (double b = 1e-6; b < r_end; b *= 8.0) {
    total += adaptive_simpson(g, a, b, tol * 1e-3);
    a = b;
  }
  total += adaptive_simpson(g, a, r_end, tol);
  return 4.0 * kPi * total;
}

// Smooth decaying random test fields: a few Gaussian bumps with random
// scales and phase curvature.
inline ComplexRadialField random_field(std::shared_ptr<const RadialGrid> grid,
                                       std::mt19937& rng, bool complex_phase = true) {
  std::uniform_real_distribution<double> amp(0.05, 1.0), width(0.5, 2.0), center(0.0, 4.0),
      chirp(-0.5, 0.5);
  const int bumps = 1 + static_cast<int>(rng() % 3);
  std::vector<double> as(bumps), ws(bumps), cs(bumps);
  for (int i = 0; i < bumps; ++i) {
    as[i] = amp(rng);
    ws[i] = width(rng);
    cs[i] = center(rng);
  }
  const double gamma = complex_phase ? chirp(rng) : 0.0;
  return ComplexRadialField::from_u(std::move(grid), [=](double r) {
    double re = 0.0;
    for (int i = 0; i < bumps; ++i) {
      const double x = (r - cs[i]) / ws[i];
      re += as[i] * std::exp(-x * x);
    }
    return std::polar(re, gamma * r * r);
  });
}

}  // namespace inls::testing
