#include <doctest.h>

#include <random>

#include "inls/spectral.hpp"
#include "support/oracles.hpp"

using namespace inls;

namespace {
std::shared_ptr<const RadialGrid> test_grid(double r_max = 16.0, int n = 1023,
                                            Rational b = Rational(1, 4)) {
  return make_grid(r_max, n, b);
}
}  // namespace

TEST_CASE("sine eigenfunction of the discrete Laplacian") {
  auto grid = test_grid(16.0, 511, Rational(0));
  const double k1 = grid->wavenumbers()[0];
  std::vector<Complex> v(grid->n());
  for (int j = 0; j < grid->n(); ++j) v[j] = std::sin(k1 * grid->nodes()[j]);
  const ComplexRadialField f(grid, v);
  const ComplexRadialField lap = laplacian(f);
  for (int j = 0; j < grid->n(); j += 37)
    CHECK(lap.v()[j].real() == doctest::Approx(-k1 * k1 * v[j].real()).epsilon(1e-12));
}

TEST_CASE("Gaussian Laplacian against the symbolic derivative") {
  auto grid = test_grid(16.0, 2047, Rational(0));
  const auto f = ComplexRadialField::gaussian(grid, 1.0);
  const ComplexRadialField lap = laplacian(f);
  double max_err = 0.0;
  for (int j = 0; j < grid->n(); ++j) {
    const double r = grid->nodes()[j];
    const double expected = (4.0 * r * r - 6.0) * std::exp(-r * r);
    max_err = std::max(max_err, std::abs(lap.v()[j].real() / r - expected));
    CHECK(std::abs(lap.v()[j].imag()) < 1e-12);
  }
  CHECK(max_err < 1e-8);
}

TEST_CASE("laplacian of the zero field") {
  auto grid = test_grid();
  const ComplexRadialField zero(grid);
  const ComplexRadialField lap = laplacian(zero);
  for (const Complex& v : lap.v()) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("integrate: ball volume") {
  auto grid = test_grid(16.0, 4095, Rational(0));
  const double R0 = 5.0;
  std::vector<double> f(grid->n());
  for (int j = 0; j < grid->n(); ++j) f[j] = grid->nodes()[j] <= R0 ? 1.0 : 0.0;
  const double vol = integrate(*grid, f);
  CHECK(vol == doctest::Approx(4.0 / 3.0 * std::numbers::pi * R0 * R0 * R0).epsilon(1e-3));
}

TEST_CASE("integrate: Gaussian closed form") {
  auto grid = test_grid(16.0, 2047, Rational(0));  // dr < 1e-2
  std::vector<double> f(grid->n());
  for (int j = 0; j < grid->n(); ++j) f[j] = std::exp(-2.0 * grid->nodes()[j] * grid->nodes()[j]);
  CHECK(integrate(*grid, f) == doctest::Approx(1.9687012432153025).epsilon(1e-8));
}

TEST_CASE("integrate: singular weight against the adaptive oracle") {
  auto grid = make_grid(32.0, 4095, Rational(1, 4));
  const double b = 0.25;
  std::vector<double> f(grid->n());
  for (int j = 0; j < grid->n(); ++j) {
    const double r = grid->nodes()[j];
    f[j] = std::pow(r, -b) * std::exp(-4.0 * r * r);
  }
  const double oracle = testing::radial_integral(
      [b](double r) { return std::pow(r, -b) * std::exp(-4.0 * r * r); }, 10.0);
  CHECK(oracle == doctest::Approx(0.83024623719405974).epsilon(1e-10));  // frozen from mpmath
  CHECK(integrate(*grid, f) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("integrate of a nonnegative field is nonnegative") {
  auto grid = test_grid();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> f(grid->n());
  for (double& x : f) x = uni(rng);
  CHECK(integrate(*grid, f) >= 0.0);
}

TEST_CASE("free propagation: identity, unitarity, group property") {
  auto grid = test_grid();
  std::mt19937 rng(11);
  const auto f = testing::random_field(grid, rng);

  const auto id = free_propagate(f, 0.0);
  for (int j = 0; j < grid->n(); ++j) CHECK(std::abs(id.v()[j] - f.v()[j]) < 1e-14);

  const double m0 = mass(f);
  const auto g = free_propagate(f, 0.37);
  CHECK(mass(g) == doctest::Approx(m0).epsilon(1e-12));

  const auto back = free_propagate(g, -0.37);
  double max_err = 0.0, max_abs = 0.0;
  for (int j = 0; j < grid->n(); ++j) {
    max_err = std::max(max_err, std::abs(back.v()[j] - f.v()[j]));
    max_abs = std::max(max_abs, std::abs(f.v()[j]));
  }
  CHECK(max_err < 1e-12 * max_abs);
}

TEST_CASE("DST round-trip and Parseval") {
  auto grid = test_grid();
  std::mt19937 rng(23);
  const auto f = testing::random_field(grid, rng);

  const auto round = synthesize(analyze(f));
  double max_err = 0.0, max_abs = 0.0;
  for (int j = 0; j < grid->n(); ++j) {
    max_err = std::max(max_err, std::abs(round.v()[j] - f.v()[j]));
    max_abs = std::max(max_abs, std::abs(f.v()[j]));
  }
  CHECK(max_err < 1e-12 * max_abs);

  double physical = 0.0;
  for (const Complex& v : f.v()) physical += std::norm(v);
  physical *= grid->dr();
  const SineModes modes = analyze(f);
  double spectral = 0.0;
  for (const Complex& a : modes.a) spectral += std::norm(a);
  spectral *= 0.5 * grid->r_max();
  CHECK(physical == doctest::Approx(spectral).epsilon(1e-12));
}

TEST_CASE("laplacian is symmetric in the radial inner product") {
  auto grid = test_grid();
  std::mt19937 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = testing::random_field(grid, rng);
    const auto g = testing::random_field(grid, rng);
    const auto lf = laplacian(f);
    const auto lg = laplacian(g);
    // <f, lap g> over R^3 equals dr * sum conj(v_f) (v_g)'' in the v-representation
    Complex left(0.0, 0.0), right(0.0, 0.0);
    for (int j = 0; j < grid->n(); ++j) {
      left += std::conj(f.v()[j]) * lg.v()[j];
      right += std::conj(lf.v()[j]) * g.v()[j];
    }
    CHECK(std::abs(left - right) < 1e-10 * std::abs(left));
  }
}

TEST_CASE("radial derivative matches the symbolic Gaussian derivative") {
  auto grid = test_grid(16.0, 2047, Rational(0));
  const auto f = ComplexRadialField::gaussian(grid, 1.0);
  const auto du = radial_derivative_u(f);
  double max_err = 0.0;
  for (int j = 0; j < grid->n(); ++j) {
    const double r = grid->nodes()[j];
    max_err = std::max(max_err, std::abs(du[j].real() - (-2.0 * r * std::exp(-r * r))));
  }
  CHECK(max_err < 1e-8);
}

TEST_CASE("grad_sq agrees with the pointwise derivative quadrature") {
  auto grid = test_grid();
  std::mt19937 rng(43);
  const auto f = testing::random_field(grid, rng);
  const auto du = radial_derivative_u(f);
  std::vector<double> integrand(grid->n());
  for (int j = 0; j < grid->n(); ++j) integrand[j] = std::norm(du[j]);
  CHECK(grad_sq(f) == doctest::Approx(integrate(*grid, integrand)).epsilon(1e-8));
}
