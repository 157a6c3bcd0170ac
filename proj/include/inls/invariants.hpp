#pragma once

#include "inls/ground_state.hpp"

namespace inls {

struct SupportOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HypothesisViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Conserved quantities and scale-invariant products of a field.
/// me_product is NaN when the energy is negative (flagged instead of
/// raising a complex power).
struct InvariantReport {
  double mass = 0.0;
  double grad_sq = 0.0;
  double potential = 0.0;
  double energy = 0.0;
  double me_product = 0.0;    // E^{s_c} M^{1-s_c}
  double grad_product = 0.0;  // ||grad u||^{s_c} ||u||^{1-s_c}
  double variance = 0.0;      // integral |x|^2 |u|^2
  bool negative_energy = false;
  bool finite_variance = true;  // outer-10% contribution below 1e-4 of total
};

InvariantReport report(const ComplexRadialField& field, const InlsParams& params);

/// u_delta(r) = delta^{(2-b)/2} u(delta r), sampled back on the same grid by
/// band-limited sine interpolation. Throws SupportOverflow when the input
/// tail would be truncated or the result leaks into the outer 10% of the
/// grid (mass fraction above 1e-8).
ComplexRadialField rescale(const ComplexRadialField& field, double delta);

enum class VerdictTag {
  GlobalScattering,
  BlowupCandidate,
  Indeterminate,
  NegativeEnergyBlowupCandidate,
};

struct Verdict {
  VerdictTag tag = VerdictTag::Indeterminate;
  double me_ratio = 0.0;    // me_product / threshold_me (NaN when E < 0)
  double grad_ratio = 0.0;  // grad_product / threshold_grad
  bool finite_variance = true;
  bool negative_energy = false;
};

/// Places initial data against the ground-state thresholds:
///   me < 1 and grad < 1                    -> GlobalScattering
///   me < 1 and grad > 1, finite variance   -> BlowupCandidate
///   E < 0, finite variance                 -> NegativeEnergyBlowupCandidate
///   anything else (incl. exact boundaries) -> Indeterminate
Verdict classify(const ComplexRadialField& field, const GroundStateProfile& profile);

/// Slacks of the coercivity chain available below the gradient threshold:
///   (i)   s_c/(3+b) ||grad v||^2 <= E[v] <= 1/2 ||grad v||^2
///   (ii)  grad_product <= w^{1/2} threshold_grad, w = me_ratio
///   (iii) 8 ||grad v||^2 - 2(3+b) potential >= 8(1-w) ||grad v||^2
/// Nonnegative slack means the inequality holds. Throws HypothesisViolated
/// when grad_product exceeds the threshold.
struct CoercivityReport {
  double w = 0.0;
  double slack_energy_lower = 0.0;
  double slack_energy_upper = 0.0;
  double slack_gradient = 0.0;
  double slack_virial = 0.0;
};

CoercivityReport coercivity_check(const ComplexRadialField& field,
                                  const GroundStateProfile& profile);

const char* verdict_name(VerdictTag tag);

}  // namespace inls
