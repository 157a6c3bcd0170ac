#pragma once

#include <memory>
#include <vector>

#include "inls/rational.hpp"

namespace inls {

/// Uniform half-line grid carrying the v = r*u representation.
///
/// Nodes r_j = j*dr for j = 1..n with dr = r_max/(n+1); both endpoints are
/// excluded (homogeneous Dirichlet in v). Sine modes k_m = m*pi/r_max
/// diagonalize the 1D second derivative, which is the 3D radial Laplacian
/// acting on v. The singular weight r^{-b} is precomputed at the nodes.
///
/// Immutable after construction; transform execution is thread-safe.
/// Prefer n = 2^k - 1 so the underlying real transform has power-of-two
/// length.
class RadialGrid {
 public:
  RadialGrid(double r_max, int n, const Rational& b);
  ~RadialGrid();
  RadialGrid(const RadialGrid&) = delete;
  RadialGrid& operator=(const RadialGrid&) = delete;

  double r_max() const { return r_max_; }
  int n() const { return n_; }
  double dr() const { return dr_; }
  const Rational& b() const { return b_; }
  double b_value() const { return b_value_; }
  double s_c() const { return 0.5 * (1.0 + b_value_); }

  const std::vector<double>& nodes() const { return r_; }
  const std::vector<double>& wavenumbers() const { return k_; }
  const std::vector<double>& weight() const { return w_; }

  /// Unnormalized DST-I: out_m = 2 sum_j in_j sin(pi j m / (n+1)).
  /// Applying it twice multiplies by 2(n+1). in == out is allowed.
  void sine_transform(const double* in, double* out) const;

  /// Cosine series evaluation at the nodes:
  /// out_j = sum_m in_m cos(pi j m / (n+1)), j = 1..n.
  void cosine_series(const double* in, double* out) const;

  /// Normalization so that a = dst(v)/(n+1) gives v_j = sum a_m sin(k_m r_j).
  double mode_norm() const { return static_cast<double>(n_ + 1); }

  bool compatible(const RadialGrid& other) const {
    return n_ == other.n_ && r_max_ == other.r_max_ && b_ == other.b_;
  }

 private:
  struct Plans;
  double r_max_;
  int n_;
  double dr_;
  Rational b_;
  double b_value_;
  std::vector<double> r_, k_, w_;
  std::unique_ptr<Plans> plans_;
};

std::shared_ptr<const RadialGrid> make_grid(double r_max, int n, const Rational& b);

}  // namespace inls
