#include "inls/invariants.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace inls {

namespace {

constexpr double kQuietNan = std::numeric_limits<double>::quiet_NaN();

double variance_of(const ComplexRadialField& field, bool* finite) {
  // |x|^2 |u|^2 r^2 = r^2 |v|^2
  const auto& grid = field.grid();
  const auto& r = grid.nodes();
  const int n = grid.n();
  const int start = n - n / 10;
  double total = 0.0, outer = 0.0;
  for (int j = 0; j < n; ++j) {
    const double m = r[j] * r[j] * std::norm(field.v()[j]);
    total += m;
    if (j >= start) outer += m;
  }
  // Any truncated grid makes the variance literally finite; what this
  // detects is a tail that has not decayed.
  if (finite) *finite = total == 0.0 || outer <= 1e-4 * total;
  return 4.0 * std::numbers::pi * total * grid.dr();
}

}  // namespace

InvariantReport report(const ComplexRadialField& field, const InlsParams& params) {
  if (params.b != field.grid().b())
    throw std::invalid_argument("params.b does not match the field's grid");
  const double sc = field.grid().s_c();

  InvariantReport rep;
  SineModes modes = analyze(field);
  rep.mass = mass_of_modes(modes);
  rep.grad_sq = grad_sq_of_modes(modes);
  rep.potential = potential_term(field);
  rep.energy = 0.5 * rep.grad_sq - 0.25 * rep.potential;
  rep.negative_energy = rep.energy < 0.0;
  rep.me_product = rep.negative_energy
                       ? kQuietNan
                       : std::pow(rep.energy, sc) * std::pow(rep.mass, 1.0 - sc);
  rep.grad_product = std::pow(rep.grad_sq, 0.5 * sc) * std::pow(rep.mass, 0.5 * (1.0 - sc));
  rep.variance = variance_of(field, &rep.finite_variance);
  return rep;
}

ComplexRadialField rescale(const ComplexRadialField& field, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const auto& grid = field.grid();
  const int n = grid.n();
  const double r_max = grid.r_max();

  if (delta > 1.0) {
    // Samples needed beyond r_max are zero-filled; make sure nothing is
    // actually truncated there.
    double cut = 0.0, total = 0.0;
    for (int j = 0; j < n; ++j) {
      const double m = std::norm(field.v()[j]);
      total += m;
      if (grid.nodes()[j] * delta > r_max) cut += m;
    }
    if (total > 0.0 && cut > 1e-8 * total)
      throw SupportOverflow("input support extends past r_max/delta");
  }

  const SineModes modes = analyze(field);
  const double b = grid.b_value();
  const double amp = std::pow(delta, 0.5 * (2.0 - b) - 1.0);  // v = r*u absorbs one power

  // Clenshaw evaluation of sum_m a_m sin(m phi) at phi = pi delta j/(n+1).
  std::vector<Complex> v_new(n, Complex(0.0, 0.0));
  const double pi = std::numbers::pi;
  for (int j = 0; j < n; ++j) {
    const double rho = delta * grid.nodes()[j];
    if (rho > r_max) continue;
    const double phi = pi * rho / r_max;
    const double two_cos = 2.0 * std::cos(phi);
    Complex bk1(0.0, 0.0), bk2(0.0, 0.0);
    for (int m = n - 1; m >= 0; --m) {
      const Complex bk = modes.a[m] + two_cos * bk1 - bk2;
      bk2 = bk1;
      bk1 = bk;
    }
    v_new[j] = amp * bk1 * std::sin(phi);
  }

  ComplexRadialField result(field.grid_ptr(), std::move(v_new));
  if (boundary_mass_fraction(result) > 1e-8)
    throw SupportOverflow("rescaled field leaks into the outer 10% of the grid");
  return result;
}

Verdict classify(const ComplexRadialField& field, const GroundStateProfile& profile) {
  if (profile.params.b != field.grid().b())
    throw std::invalid_argument("ground-state profile solved at a different b");
  const InvariantReport rep = report(field, profile.params);

  Verdict verdict;
  verdict.negative_energy = rep.negative_energy;
  verdict.finite_variance = rep.finite_variance;
  verdict.me_ratio = rep.negative_energy ? kQuietNan : rep.me_product / profile.threshold_me;
  verdict.grad_ratio = rep.grad_product / profile.threshold_grad;

  if (rep.negative_energy) {
    verdict.tag = rep.finite_variance ? VerdictTag::NegativeEnergyBlowupCandidate
                                      : VerdictTag::Indeterminate;
  } else if (verdict.me_ratio < 1.0 && verdict.grad_ratio < 1.0) {
    verdict.tag = VerdictTag::GlobalScattering;
  } else if (verdict.me_ratio < 1.0 && verdict.grad_ratio > 1.0 && rep.finite_variance) {
    verdict.tag = VerdictTag::BlowupCandidate;
  } else {
    verdict.tag = VerdictTag::Indeterminate;
  }
  return verdict;
}

CoercivityReport coercivity_check(const ComplexRadialField& field,
                                  const GroundStateProfile& profile) {
  const InvariantReport rep = report(field, profile.params);
  if (rep.grad_product > profile.threshold_grad)
    throw HypothesisViolated("field sits above the gradient threshold");

  const double b = profile.grid->b_value();
  const double sc = profile.grid->s_c();

  CoercivityReport out;
  out.w = rep.mass == 0.0 ? 0.0 : rep.me_product / profile.threshold_me;
  out.slack_energy_lower = rep.energy - (sc / (3.0 + b)) * rep.grad_sq;
  out.slack_energy_upper = 0.5 * rep.grad_sq - rep.energy;
  out.slack_gradient = std::sqrt(out.w) * profile.threshold_grad - rep.grad_product;
  out.slack_virial =
      (8.0 * rep.grad_sq - 2.0 * (3.0 + b) * rep.potential) - 8.0 * (1.0 - out.w) * rep.grad_sq;
  return out;
}

const char* verdict_name(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::GlobalScattering: return "GlobalScattering";
    case VerdictTag::BlowupCandidate: return "BlowupCandidate";
    case VerdictTag::Indeterminate: return "Indeterminate";
    case VerdictTag::NegativeEnergyBlowupCandidate: return "NegativeEnergyBlowupCandidate";
  }
  return "?";
}

}  // namespace inls
