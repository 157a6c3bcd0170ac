#include "inls/spectral.hpp"

#include <cmath>
#include <numbers>

namespace inls {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Split/merge between complex samples and the two real work arrays the
// r2r transforms run on.
void transform_complex(const RadialGrid& grid, const std::vector<Complex>& in,
                       std::vector<Complex>& out, double scale) {
  const int n = grid.n();
  std::vector<double> re(n), im(n);
  for (int j = 0; j < n; ++j) {
    re[j] = in[j].real();
    im[j] = in[j].imag();
  }
  grid.sine_transform(re.data(), re.data());
  grid.sine_transform(im.data(), im.data());
  out.resize(n);
  for (int j = 0; j < n; ++j) out[j] = Complex(re[j] * scale, im[j] * scale);
}

}  // namespace

SineModes analyze(const ComplexRadialField& field) {
  SineModes modes{field.grid_ptr(), {}};
  transform_complex(field.grid(), field.v(), modes.a, 1.0 / field.grid().mode_norm());
  return modes;
}

ComplexRadialField synthesize(const SineModes& modes) {
  std::vector<Complex> v;
  transform_complex(*modes.grid, modes.a, v, 0.5);
  return ComplexRadialField(modes.grid, std::move(v));
}

ComplexRadialField laplacian(const ComplexRadialField& field) {
  SineModes modes = analyze(field);
  const auto& k = modes.grid->wavenumbers();
  for (int m = 0; m < modes.grid->n(); ++m) modes.a[m] *= -k[m] * k[m];
  return synthesize(modes);
}

void free_propagate_modes(SineModes& modes, double t) {
  const auto& k = modes.grid->wavenumbers();
  for (int m = 0; m < modes.grid->n(); ++m) {
    modes.a[m] *= std::polar(1.0, -k[m] * k[m] * t);
  }
}

ComplexRadialField free_propagate(const ComplexRadialField& field, double t) {
  SineModes modes = analyze(field);
  free_propagate_modes(modes, t);
  return synthesize(modes);
}

double integrate(const RadialGrid& grid, std::span<const double> f) {
  const auto& r = grid.nodes();
  double sum = 0.0;
  for (size_t j = 0; j < f.size(); ++j) sum += f[j] * r[j] * r[j];
  return kFourPi * sum * grid.dr();
}

double mass(const ComplexRadialField& field) {
  // |u|^2 r^2 = |v|^2
  double sum = 0.0;
  for (const Complex& vj : field.v()) sum += std::norm(vj);
  return kFourPi * sum * field.grid().dr();
}

double mass_of_modes(const SineModes& modes) {
  double sum = 0.0;
  for (const Complex& am : modes.a) sum += std::norm(am);
  return kFourPi * sum * 0.5 * modes.grid->r_max();
}

double grad_sq_of_modes(const SineModes& modes) {
  const auto& k = modes.grid->wavenumbers();
  double sum = 0.0;
  for (int m = 0; m < modes.grid->n(); ++m) sum += k[m] * k[m] * std::norm(modes.a[m]);
  return kFourPi * sum * 0.5 * modes.grid->r_max();
}

double grad_sq(const ComplexRadialField& field) { return grad_sq_of_modes(analyze(field)); }

double potential_term(const ComplexRadialField& field) {
  // r^{-b} |u|^4 r^2 = r^{-b} |v|^4 / r^2
  const auto& grid = field.grid();
  const auto& r = grid.nodes();
  const auto& w = grid.weight();
  double sum = 0.0;
  for (int j = 0; j < grid.n(); ++j) {
    const double v2 = std::norm(field.v()[j]);
    sum += w[j] * v2 * v2 / (r[j] * r[j]);
  }
  return kFourPi * sum * grid.dr();
}

double h1_norm_sq(const ComplexRadialField& field) {
  SineModes modes = analyze(field);
  return mass_of_modes(modes) + grad_sq_of_modes(modes);
}

std::vector<Complex> radial_derivative_u(const ComplexRadialField& field) {
  const auto& grid = field.grid();
  const int n = grid.n();
  const auto& k = grid.wavenumbers();
  const auto& r = grid.nodes();

  SineModes modes = analyze(field);
  std::vector<double> g(n), re(n), im(n);
  for (int m = 0; m < n; ++m) g[m] = k[m] * modes.a[m].real();
  grid.cosine_series(g.data(), re.data());
  for (int m = 0; m < n; ++m) g[m] = k[m] * modes.a[m].imag();
  grid.cosine_series(g.data(), im.data());

  std::vector<Complex> du(n);
  for (int j = 0; j < n; ++j) {
    const Complex vprime(re[j], im[j]);
    du[j] = vprime / r[j] - field.v()[j] / (r[j] * r[j]);
  }
  return du;
}

double boundary_mass_fraction(const ComplexRadialField& field) {
  const int n = field.grid().n();
  const int start = n - n / 10;
  double outer = 0.0, total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double m = std::norm(field.v()[j]);
    total += m;
    if (j >= start) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

double sup_u(const ComplexRadialField& field) {
  const auto& r = field.grid().nodes();
  double max_abs = 0.0;
  for (int j = 0; j < field.grid().n(); ++j)
    max_abs = std::max(max_abs, std::abs(field.v()[j]) / r[j]);
  return max_abs;
}

double lp_norm_u(const ComplexRadialField& field, double p) {
  const auto& grid = field.grid();
  const auto& r = grid.nodes();
  std::vector<double> f(grid.n());
  for (int j = 0; j < grid.n(); ++j) f[j] = std::pow(std::abs(field.v()[j]) / r[j], p);
  return std::pow(integrate(grid, f), 1.0 / p);
}

}  // namespace inls
