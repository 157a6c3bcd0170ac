#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "inls/grid.hpp"

namespace inls {

using Complex = std::complex<double>;

/// Complex samples of v = r*u on a RadialGrid. Value-like: copies are
/// independent; operations never mutate their inputs.
class ComplexRadialField {
 public:
  explicit ComplexRadialField(std::shared_ptr<const RadialGrid> grid)
      : grid_(std::move(grid)), v_(grid_->n(), Complex(0.0, 0.0)) {}

  ComplexRadialField(std::shared_ptr<const RadialGrid> grid, std::vector<Complex> v_samples);

  /// Samples u(r_j) from a radial profile function.
  static ComplexRadialField from_u(std::shared_ptr<const RadialGrid> grid,
                                   const std::function<Complex(double)>& u);
  static ComplexRadialField from_u_samples(std::shared_ptr<const RadialGrid> grid,
                                           const std::vector<Complex>& u);
  static ComplexRadialField gaussian(std::shared_ptr<const RadialGrid> grid, double amplitude,
                                     double width = 1.0);

  const RadialGrid& grid() const { return *grid_; }
  const std::shared_ptr<const RadialGrid>& grid_ptr() const { return grid_; }

  std::vector<Complex>& v() { return v_; }
  const std::vector<Complex>& v() const { return v_; }

  Complex u(int j) const { return v_[j] / grid_->nodes()[j]; }
  std::vector<Complex> u_values() const;

  ComplexRadialField conjugate() const;

 private:
  std::shared_ptr<const RadialGrid> grid_;
  std::vector<Complex> v_;
};

}  // namespace inls
