#pragma once

#include <stdexcept>

#include "inls/exponents.hpp"
#include "inls/spectral.hpp"

namespace inls {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NegativeValues : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BracketFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Converged positive decaying solution of -Q + lap Q + r^{-b} Q^3 = 0,
/// with the derived norms, energy and threshold quantities.
struct GroundStateProfile {
  InlsParams params;
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> q = {};  // u-space samples Q(r_j)
  double mass = 0.0;      // M[Q]
  double grad_sq = 0.0;   // ||grad Q||^2
  double potential = 0.0; // || r^{-b} Q^4 ||_L1
  double energy = 0.0;    // E[Q]
  double c_gn = 0.0;      // sharp constant, closed form from the norms
  double threshold_me = 0.0;    // E[Q]^{s_c} M[Q]^{1-s_c}
  double threshold_grad = 0.0;  // ||grad Q||^{s_c} ||Q||^{1-s_c}
  double residual = 0.0;  // max_j |-Q + lap Q + r^{-b} Q^3|
  int iterations = 0;

  ComplexRadialField field() const;
};

/// Petviashvili fixed point Q_{k+1} = S_k^{3/2} (1-lap)^{-1}[r^{-b} Q_k^3],
/// S_k = <Q,(1-lap)Q> / <Q, r^{-b}Q^3>, run in the v-representation where
/// (1-lap)^{-1} divides mode m by 1 + k_m^2. Initial guess 3 exp(-r^2).
/// Stops when |S_k - 1| < tol and the equation residual < tol; throws
/// NoConvergence after max_iter and NegativeValues if positivity is lost.
GroundStateProfile solve_petviashvili(const InlsParams& params,
                                      std::shared_ptr<const RadialGrid> grid,
                                      double tol = 1e-8, int max_iter = 500);

inline constexpr double kDefaultGroundStateRmax = 32.0;
inline constexpr int kDefaultGroundStateN = 4095;

GroundStateProfile solve_ground_state(const InlsParams& params, double tol = 1e-8);

struct ShootingOptions {
  double r_start = 1e-6;
  double r_end = 40.0;
  double alpha_lo = 0.5;
  double alpha_hi = 20.0;
  double tol = 1e-13;  // relative bracket width on the initial amplitude
};

struct ShootingProfile {
  std::vector<double> q;  // Q at the grid nodes, zero past r_stop
  double alpha = 0.0;     // separatrix initial amplitude Q(r_start)
  double r_stop = 0.0;    // where the near-separatrix trajectory was cut
  int bisections = 0;
};

/// Independent ODE oracle: integrates Q'' + (2/r)Q' - Q + r^{-b}Q^3 = 0
/// outward from r_start with Q' = 0 and bisects the initial amplitude
/// between "crosses zero" (too large) and "rebounds from a positive
/// minimum" (too small); returns the separatrix profile sampled on the
/// grid. Shares no machinery with the spectral solver.
ShootingProfile shooting_oracle(const InlsParams& params, const RadialGrid& grid,
                                const ShootingOptions& options = {});

/// Two routes to the sharp interpolation constant: the extremizing ratio
/// evaluated from the profile integrals, and the closed form in terms of
/// the norms of Q. They agree for a converged profile.
struct GnConstant {
  double direct;
  double closed;
};
GnConstant gn_constant(const GroundStateProfile& profile);

}  // namespace inls
