#include "inls/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace inls {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Work buffers and precomputed phases for a fixed (grid, dt) pair, so the
// hot loop performs only r2r transforms and pointwise updates.
class StrangStepper {
 public:
  StrangStepper(const RadialGrid& grid, double dt, bool nonlinear)
      : grid_(grid), dt_(dt), nonlinear_(nonlinear), n_(grid.n()),
        re_(n_), im_(n_), half_cos_(n_), half_sin_(n_) {
    const auto& k = grid.wavenumbers();
    for (int m = 0; m < n_; ++m) {
      // exp(-i k^2 dt/2)
      half_cos_[m] = std::cos(0.5 * k[m] * k[m] * dt);
      half_sin_[m] = -std::sin(0.5 * k[m] * k[m] * dt);
    }
  }

  // Advances v by one step; fills mass and grad_sq from mode space (both
  // are invariant under the trailing half flight).
  void advance(std::vector<Complex>& v, double* mass_out, double* grad_out) {
    half_flight(v);
    if (nonlinear_) {
      const auto& r = grid_.nodes();
      const auto& w = grid_.weight();
      for (int j = 0; j < n_; ++j) {
        const double u2 = std::norm(v[j]) / (r[j] * r[j]);
        v[j] *= std::polar(1.0, w[j] * u2 * dt_);
      }
    }
    half_flight(v, mass_out, grad_out);
  }

 private:
  void half_flight(std::vector<Complex>& v, double* mass_out = nullptr,
                   double* grad_out = nullptr) {
    for (int j = 0; j < n_; ++j) {
      re_[j] = v[j].real();
      im_[j] = v[j].imag();
    }
    grid_.sine_transform(re_.data(), re_.data());
    grid_.sine_transform(im_.data(), im_.data());
    for (int m = 0; m < n_; ++m) {
      const double a = re_[m], b = im_[m];
      re_[m] = a * half_cos_[m] - b * half_sin_[m];
      im_[m] = a * half_sin_[m] + b * half_cos_[m];
    }
    if (mass_out && grad_out) {
      // Unnormalized modes X = (n+1) a; Parseval with the |multiplier| = 1
      // phases already applied.
      const auto& k = grid_.wavenumbers();
      const double scale = kFourPi * 0.5 * grid_.r_max() / (grid_.mode_norm() * grid_.mode_norm());
      double m_sum = 0.0, g_sum = 0.0;
      for (int m = 0; m < n_; ++m) {
        const double p = re_[m] * re_[m] + im_[m] * im_[m];
        m_sum += p;
        g_sum += k[m] * k[m] * p;
      }
      *mass_out = scale * m_sum;
      *grad_out = scale * g_sum;
    }
    grid_.sine_transform(re_.data(), re_.data());
    grid_.sine_transform(im_.data(), im_.data());
    const double inv = 1.0 / (2.0 * grid_.mode_norm());
    for (int j = 0; j < n_; ++j) v[j] = Complex(re_[j] * inv, im_[j] * inv);
  }

  const RadialGrid& grid_;
  double dt_;
  bool nonlinear_;
  int n_;
  std::vector<double> re_, im_, half_cos_, half_sin_;
};

MonitorRow make_row(double t, double m, double g, const std::vector<Complex>& v,
                    const RadialGrid& grid) {
  const auto& r = grid.nodes();
  const auto& w = grid.weight();
  const int n = grid.n();
  const int outer_start = n - n / 10;
  double pot_sum = 0.0, outer = 0.0, total = 0.0, sup = 0.0;
  for (int j = 0; j < n; ++j) {
    const double v2 = std::norm(v[j]);
    pot_sum += w[j] * v2 * v2 / (r[j] * r[j]);
    total += v2;
    if (j >= outer_start) outer += v2;
    sup = std::max(sup, v2 / (r[j] * r[j]));
  }
  MonitorRow row;
  row.t = t;
  row.mass = m;
  row.grad_sq = g;
  row.potential = kFourPi * pot_sum * grid.dr();
  row.energy = 0.5 * g - 0.25 * row.potential;
  const double sc = grid.s_c();
  row.grad_product = std::pow(g, 0.5 * sc) * std::pow(m, 0.5 * (1.0 - sc));
  row.sup_u = std::sqrt(sup);
  row.boundary_frac = total > 0.0 ? outer / total : 0.0;
  return row;
}

}  // namespace

ComplexRadialField step(const ComplexRadialField& field, double dt, const InlsParams& params,
                        bool nonlinear) {
  if (params.b != field.grid().b())
    throw std::invalid_argument("params.b does not match the field's grid");
  StrangStepper stepper(field.grid(), dt, nonlinear);
  std::vector<Complex> v = field.v();
  double m, g;
  stepper.advance(v, &m, &g);
  return ComplexRadialField(field.grid_ptr(), std::move(v));
}

EvolutionTrace evolve(const ComplexRadialField& u0, const EvolveConfig& config,
                      const InlsParams& params) {
  if (!(config.dt != 0.0)) throw std::invalid_argument("dt must be nonzero");
  if (!(config.T > 0.0)) throw std::invalid_argument("T must be positive");
  if (params.b != u0.grid().b())
    throw std::invalid_argument("params.b does not match the field's grid");

  const RadialGrid& grid = u0.grid();
  const double sc = grid.s_c();
  const long n_steps = std::lround(config.T / std::abs(config.dt));
  if (n_steps < 1) throw std::invalid_argument("T/dt must be at least one step");

  EvolutionTrace trace{params, u0.grid_ptr(), config, {}, {}, {}, u0};
  trace.monitors.reserve(n_steps + 1);

  const double sup_limit = 0.1 * std::numbers::pi / (2.0 * grid.dr());

  std::vector<Complex> v = u0.v();
  {
    SineModes m0 = analyze(u0);
    trace.monitors.push_back(
        make_row(0.0, mass_of_modes(m0), grad_sq_of_modes(m0), v, grid));
  }
  if (config.snapshot_stride > 0) {
    trace.snapshot_times.push_back(0.0);
    trace.snapshots.push_back(u0);
  }

  StrangStepper stepper(grid, config.dt, config.nonlinear);
  trace.termination = Termination::ReachedT;
  long s = 0;
  for (; s < n_steps; ++s) {
    double m, g;
    stepper.advance(v, &m, &g);
    const double t = (s + 1) * config.dt;
    trace.monitors.push_back(make_row(t, m, g, v, grid));
    const MonitorRow& row = trace.monitors.back();

    if (config.snapshot_stride > 0 && (s + 1) % config.snapshot_stride == 0) {
      trace.snapshot_times.push_back(t);
      trace.snapshots.emplace_back(u0.grid_ptr(), v);
    }

    bool blown = row.sup_u > sup_limit;
    if (config.threshold_grad && row.mass > 0.0) {
      const double grad_scale =
          std::pow(*config.threshold_grad / std::pow(row.mass, 0.5 * (1.0 - sc)), 2.0 / sc);
      blown = blown || row.grad_sq > config.blowup_factor * config.blowup_factor * grad_scale;
    }
    if (blown) {
      trace.termination = Termination::BlowupDetected;
      ++s;
      break;
    }
    if (row.boundary_frac > config.boundary_limit) {
      trace.termination = Termination::BoundaryContaminated;
      ++s;
      break;
    }
  }
  trace.t_final = s * config.dt;
  trace.final_field = ComplexRadialField(u0.grid_ptr(), std::move(v));
  return trace;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::ReachedT: return "ReachedT";
    case Termination::BlowupDetected: return "BlowupDetected";
    case Termination::BoundaryContaminated: return "BoundaryContaminated";
  }
  return "?";
}

}  // namespace inls
