#pragma once

#include "inls/dynamics.hpp"

namespace inls {

struct WeightOverflowsGrid : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StrideTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Smooth radial weight phi with phi(rho) = rho^2 for rho <= 1 and
/// phi = 0 for rho >= 2, blended on [1, 2] by the fixed quintic matching
/// value and two derivatives at both ends. One frozen profile keeps every
/// output bit-reproducible. Derivative profiles are sampled at r_j/R.
struct VirialWeight {
  double R = 0.0;
  std::vector<double> phi;      // phi(r/R)
  std::vector<double> dphi;     // phi'(r/R)
  std::vector<double> ddphi;    // phi''(r/R)
  std::vector<double> lap;      // (Laplacian phi)(r/R) = phi'' + 2 phi'/rho
  std::vector<double> bilap;    // (Laplacian^2 phi)(r/R) = phi'''' + 4 phi'''/rho

  /// Throws WeightOverflowsGrid when 2R >= r_max.
  static VirialWeight for_grid(const RadialGrid& grid, double R);
};

// Scalar blend profile and its derivatives (order 0..4), exposed for tests.
double virial_phi(double rho, int derivative = 0);

/// z_R = integral R^2 phi(x/R) |u|^2.
double virial_z(const ComplexRadialField& field, const VirialWeight& weight);

/// z'_R = 2R Im integral phi'(r/R) (du/dr) conj(u).
double virial_z_prime(const ComplexRadialField& field, const VirialWeight& weight);

/// z''_R assembled from the four local terms; reduces to
/// 8 ||grad u||^2 - 2(3+b) || r^{-b}|u|^4 || when the weight is untruncated
/// over the support.
double virial_z_doubleprime(const ComplexRadialField& field, const VirialWeight& weight,
                            const InlsParams& params);

struct VirialConsistency {
  std::vector<double> times;       // interior snapshot times
  std::vector<double> z;           // z_R at all snapshot times
  std::vector<double> fd;          // 4th-order centered d^2z/dt^2
  std::vector<double> formula;     // z'' formula at the interior times
  double max_rel_residual = 0.0;   // relative to max |formula|
};

/// Compares finite differences of z_R along the trace against the z''
/// formula. Needs at least five uniformly spaced snapshots.
VirialConsistency virial_consistency(const EvolutionTrace& trace, double R);

/// integral_{|x|>R} |grad u|^2, spectral radial derivative + tail quadrature.
double gradient_tail(const ComplexRadialField& field, double R);

enum class Direction { Forward, Backward };

struct StrichartzSeries {
  ExponentPair pair;
  double q = 0.0, r = 0.0;          // pair as doubles
  std::vector<double> cumulative;   // integral_0^t ||u||_{L^r}^q at snapshot times
};

struct ScatteringReport {
  ComplexRadialField phi_plus;       // constructed scattering state
  std::vector<double> times = {};
  std::vector<double> h1_distance = {};   // ||u(t) - U(t) phi+||_{H1}
  std::vector<StrichartzSeries> strichartz_partials = {};
  double duhamel_tail = 0.0;         // H1 size of the final quadrature increment
  double phi_h1 = 0.0;               // ||phi+||_{H1}
};

/// phi+ = u0 + i integral_0^T U(-s) (r^{-b}|u|^2 u)(s) ds by the trapezoid
/// rule over snapshots. Throws NotConverged when the final increment
/// exceeds tail_tol * ||phi+||_{H1}. The backward state is obtained through
/// the conjugation symmetry (conj(u)(-t) solves the equation), so a
/// Backward report expects a trace evolved from the conjugated data.
ScatteringReport scattering_state(const EvolutionTrace& trace, Direction direction,
                                  double tail_tol = 1e-4);

/// Cumulative integral ||u(s)||_{L^r}^q ds per pair at snapshot times.
std::vector<StrichartzSeries> strichartz_accumulator(const EvolutionTrace& trace,
                                                     const std::vector<ExponentPair>& pairs);

/// Finite stand-in for the sup over weighted-space pairs: the working pair
/// at the theta midpoint plus two endpoint-adjacent choices.
std::vector<ExponentPair> default_strichartz_panel(const InlsParams& params);

}  // namespace inls
