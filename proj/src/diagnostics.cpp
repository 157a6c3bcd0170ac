#include "inls/diagnostics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace inls {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

double virial_phi(double rho, int derivative) {
  if (rho <= 1.0) {
    switch (derivative) {
      case 0: return rho * rho;
      case 1: return 2.0 * rho;
      case 2: return 2.0;
      default: return 0.0;
    }
  }
  if (rho >= 2.0) return 0.0;
  // Quintic on [1,2] with phi(1) = 1, phi'(1) = 2, phi''(1) = 2 and a
  // triple zero at 2; s = rho - 1.
  const double s = rho - 1.0;
  switch (derivative) {
    case 0: return 1.0 + s * (2.0 + s * (1.0 + s * (-25.0 + s * (34.0 - 13.0 * s))));
    case 1: return 2.0 + s * (2.0 + s * (-75.0 + s * (136.0 - 65.0 * s)));
    case 2: return 2.0 + s * (-150.0 + s * (408.0 - 260.0 * s));
    case 3: return -150.0 + s * (816.0 - 780.0 * s);
    case 4: return 816.0 - 1560.0 * s;
    default: return 0.0;
  }
}

VirialWeight VirialWeight::for_grid(const RadialGrid& grid, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  if (2.0 * R >= grid.r_max())
    throw WeightOverflowsGrid("weight support [0, 2R] exceeds the grid");
  const int n = grid.n();
  VirialWeight w;
  w.R = R;
  w.phi.resize(n);
  w.dphi.resize(n);
  w.ddphi.resize(n);
  w.lap.resize(n);
  w.bilap.resize(n);
  for (int j = 0; j < n; ++j) {
    const double rho = grid.nodes()[j] / R;
    w.phi[j] = virial_phi(rho, 0);
    w.dphi[j] = virial_phi(rho, 1);
    w.ddphi[j] = virial_phi(rho, 2);
    w.lap[j] = virial_phi(rho, 2) + 2.0 * virial_phi(rho, 1) / rho;
    w.bilap[j] = virial_phi(rho, 4) + 4.0 * virial_phi(rho, 3) / rho;
  }
  return w;
}

double virial_z(const ComplexRadialField& field, const VirialWeight& weight) {
  const auto& grid = field.grid();
  std::vector<double> f(grid.n());
  const auto& r = grid.nodes();
  for (int j = 0; j < grid.n(); ++j)
    f[j] = weight.R * weight.R * weight.phi[j] * std::norm(field.v()[j]) / (r[j] * r[j]);
  return integrate(grid, f);
}

double virial_z_prime(const ComplexRadialField& field, const VirialWeight& weight) {
  const auto& grid = field.grid();
  const auto du = radial_derivative_u(field);
  const auto& r = grid.nodes();
  std::vector<double> f(grid.n());
  for (int j = 0; j < grid.n(); ++j) {
    const Complex u = field.v()[j] / r[j];
    f[j] = weight.dphi[j] * std::imag(du[j] * std::conj(u));
  }
  return 2.0 * weight.R * integrate(grid, f);
}

double virial_z_doubleprime(const ComplexRadialField& field, const VirialWeight& weight,
                            const InlsParams& params) {
  const auto& grid = field.grid();
  if (params.b != grid.b()) throw std::invalid_argument("params.b does not match the grid");
  const double b = grid.b_value();
  const auto du = radial_derivative_u(field);
  const auto& r = grid.nodes();
  const auto& wgt = grid.weight();  // r^{-b}

  std::vector<double> f(grid.n());
  for (int j = 0; j < grid.n(); ++j) {
    const double u2 = std::norm(field.v()[j]) / (r[j] * r[j]);
    const double u4 = u2 * u2;
    const double hess = 4.0 * weight.ddphi[j] * std::norm(du[j]);
    const double bih = -weight.bilap[j] * u2 / (weight.R * weight.R);
    const double lap_term = -wgt[j] * u4 * weight.lap[j];
    const double weight_grad = -b * weight.R * weight.dphi[j] * wgt[j] / r[j] * u4;
    f[j] = hess + bih + lap_term + weight_grad;
  }
  return integrate(grid, f);
}

VirialConsistency virial_consistency(const EvolutionTrace& trace, double R) {
  const size_t m = trace.snapshots.size();
  if (m < 5) throw StrideTooCoarse("need at least five snapshots for the 4th-order stencil");
  const double h = trace.snapshot_times[1] - trace.snapshot_times[0];
  for (size_t i = 1; i + 1 < m; ++i) {
    const double hi = trace.snapshot_times[i + 1] - trace.snapshot_times[i];
    if (std::abs(hi - h) > 1e-12 * std::max(1.0, std::abs(h)))
      throw StrideTooCoarse("snapshots are not uniformly spaced");
  }

  const VirialWeight weight = VirialWeight::for_grid(*trace.grid, R);
  VirialConsistency out;
  out.z.resize(m);
  for (size_t i = 0; i < m; ++i) out.z[i] = virial_z(trace.snapshots[i], weight);

  double max_abs_formula = 0.0;
  for (size_t i = 2; i + 2 < m; ++i) {
    const double fd = (-out.z[i - 2] + 16.0 * out.z[i - 1] - 30.0 * out.z[i] +
                       16.0 * out.z[i + 1] - out.z[i + 2]) /
                      (12.0 * h * h);
    const double formula = virial_z_doubleprime(trace.snapshots[i], weight, trace.params);
    out.times.push_back(trace.snapshot_times[i]);
    out.fd.push_back(fd);
    out.formula.push_back(formula);
    max_abs_formula = std::max(max_abs_formula, std::abs(formula));
  }
  out.max_rel_residual = 0.0;
  const double denom = std::max(max_abs_formula, std::numeric_limits<double>::min());
  for (size_t i = 0; i < out.fd.size(); ++i)
    out.max_rel_residual =
        std::max(out.max_rel_residual, std::abs(out.fd[i] - out.formula[i]) / denom);
  return out;
}

double gradient_tail(const ComplexRadialField& field, double R) {
  const auto& grid = field.grid();
  if (!(R < grid.r_max())) throw std::invalid_argument("R must lie inside the grid");
  const auto du = radial_derivative_u(field);
  const auto& r = grid.nodes();
  std::vector<double> f(grid.n(), 0.0);
  for (int j = 0; j < grid.n(); ++j)
    if (r[j] > R) f[j] = std::norm(du[j]);
  return integrate(grid, f);
}

std::vector<StrichartzSeries> strichartz_accumulator(const EvolutionTrace& trace,
                                                     const std::vector<ExponentPair>& pairs) {
  std::vector<StrichartzSeries> series(pairs.size());
  const size_t m = trace.snapshots.size();
  for (size_t p = 0; p < pairs.size(); ++p) {
    series[p].pair = pairs[p];
    series[p].q = pairs[p].q ? to_double(*pairs[p].q) : std::numeric_limits<double>::infinity();
    series[p].r = to_double(pairs[p].r);
    series[p].cumulative.assign(m, 0.0);
  }
  if (m == 0) return series;

  std::vector<std::vector<double>> g(pairs.size(), std::vector<double>(m));
  for (size_t i = 0; i < m; ++i) {
    for (size_t p = 0; p < pairs.size(); ++p) {
      const double lr = lp_norm_u(trace.snapshots[i], series[p].r);
      g[p][i] = std::pow(lr, series[p].q);
    }
  }
  for (size_t p = 0; p < pairs.size(); ++p) {
    for (size_t i = 1; i < m; ++i) {
      const double h = trace.snapshot_times[i] - trace.snapshot_times[i - 1];
      series[p].cumulative[i] =
          series[p].cumulative[i - 1] + 0.5 * h * (g[p][i - 1] + g[p][i]);
    }
  }
  return series;
}

std::vector<ExponentPair> default_strichartz_panel(const InlsParams& params) {
  const ThetaRange range = theta_range(params);
  const Rational width = range.hi - range.lo;
  const std::array<Rational, 3> thetas = {
      range.lo + width / 10,
      range.lo + width / 2,
      range.hi - width / 10,
  };
  std::vector<ExponentPair> panel;
  for (const Rational& theta : thetas) {
    const WorkingExponents w = working_exponents(params, theta);
    panel.push_back({w.a_hat, w.r_hat, PairClass::HsDot});
  }
  return panel;
}

ScatteringReport scattering_state(const EvolutionTrace& trace, Direction direction,
                                  double tail_tol) {
  if (trace.termination != Termination::ReachedT)
    throw std::invalid_argument("scattering construction needs a ReachedT trace");
  const size_t m = trace.snapshots.size();
  if (m < 3) throw StrideTooCoarse("need at least three snapshots for the Duhamel quadrature");

  // Backward in time: conj(u)(-t) solves the equation, so the backward
  // state of u is the conjugate of the forward state of the conjugated
  // trace. Callers supply that trace; the construction itself is identical.
  (void)direction;

  const auto& grid = *trace.grid;
  const int n = grid.n();
  const auto& k = grid.wavenumbers();
  const auto& r = grid.nodes();
  const auto& w = grid.weight();

  // Trapezoid accumulation of i U(-s) N(s) in mode space.
  std::vector<Complex> acc(n, Complex(0.0, 0.0));
  std::vector<Complex> nl(n), last_increment(n);
  double last_h = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double s = trace.snapshot_times[i];
    const auto& v = trace.snapshots[i].v();
    for (int j = 0; j < n; ++j) {
      const double u2 = std::norm(v[j]) / (r[j] * r[j]);
      nl[j] = w[j] * u2 * v[j];
    }
    SineModes modes = analyze(ComplexRadialField(trace.snapshots[i].grid_ptr(), nl));
    free_propagate_modes(modes, -s);
    double weight_trap;
    if (i == 0)
      weight_trap = 0.5 * (trace.snapshot_times[1] - trace.snapshot_times[0]);
    else if (i + 1 == m)
      weight_trap = 0.5 * (trace.snapshot_times[i] - trace.snapshot_times[i - 1]);
    else
      weight_trap = 0.5 * (trace.snapshot_times[i + 1] - trace.snapshot_times[i - 1]);
    for (int j = 0; j < n; ++j) acc[j] += weight_trap * Complex(0.0, 1.0) * modes.a[j];
    if (i + 1 == m) {
      last_h = 0.5 * (trace.snapshot_times[i] - trace.snapshot_times[i - 1]);
      last_increment = modes.a;
    }
  }

  const SineModes u0_modes = analyze(trace.snapshots[0]);
  SineModes phi_modes{trace.grid, std::vector<Complex>(n)};
  for (int j = 0; j < n; ++j) phi_modes.a[j] = u0_modes.a[j] + acc[j];

  ScatteringReport report{.phi_plus = synthesize(phi_modes)};
  const double h1_scale = kFourPi * 0.5 * grid.r_max();
  double phi_h1_sq = 0.0, tail_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    const double s2 = 1.0 + k[j] * k[j];
    phi_h1_sq += s2 * std::norm(phi_modes.a[j]);
    tail_sq += s2 * std::norm(last_h * last_increment[j]);
  }
  report.phi_h1 = std::sqrt(h1_scale * phi_h1_sq);
  report.duhamel_tail = std::sqrt(h1_scale * tail_sq);

  report.times = trace.snapshot_times;
  report.h1_distance.resize(m);
  for (size_t i = 0; i < m; ++i) {
    SineModes ut = analyze(trace.snapshots[i]);
    const double t = trace.snapshot_times[i];
    double d2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const Complex lin = phi_modes.a[j] * std::polar(1.0, -k[j] * k[j] * t);
      d2 += (1.0 + k[j] * k[j]) * std::norm(ut.a[j] - lin);
    }
    report.h1_distance[i] = std::sqrt(h1_scale * d2);
  }

  report.strichartz_partials = strichartz_accumulator(trace, default_strichartz_panel(trace.params));

  if (report.duhamel_tail > tail_tol * report.phi_h1)
    throw NotConverged("Duhamel tail " + std::to_string(report.duhamel_tail) +
                       " exceeds tolerance; T too small or non-scattering data");
  return report;
}

}  // namespace inls
