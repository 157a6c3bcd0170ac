#include "inls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace inls {

ComplexRadialField::ComplexRadialField(std::shared_ptr<const RadialGrid> grid,
                                       std::vector<Complex> v_samples)
    : grid_(std::move(grid)), v_(std::move(v_samples)) {
  if (static_cast<int>(v_.size()) != grid_->n())
    throw std::invalid_argument("field sample count does not match grid");
}

ComplexRadialField ComplexRadialField::from_u(std::shared_ptr<const RadialGrid> grid,
                                              const std::function<Complex(double)>& u) {
  std::vector<Complex> v(grid->n());
  const auto& r = grid->nodes();
  for (int j = 0; j < grid->n(); ++j) v[j] = r[j] * u(r[j]);
  return ComplexRadialField(std::move(grid), std::move(v));
}

ComplexRadialField ComplexRadialField::from_u_samples(std::shared_ptr<const RadialGrid> grid,
                                                      const std::vector<Complex>& u) {
  if (static_cast<int>(u.size()) != grid->n())
    throw std::invalid_argument("u sample count does not match grid");
  std::vector<Complex> v(grid->n());
  const auto& r = grid->nodes();
  for (int j = 0; j < grid->n(); ++j) v[j] = r[j] * u[j];
  return ComplexRadialField(std::move(grid), std::move(v));
}

ComplexRadialField ComplexRadialField::gaussian(std::shared_ptr<const RadialGrid> grid,
                                                double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  return from_u(std::move(grid), [amplitude, width](double r) {
    const double x = r / width;
    return Complex(amplitude * std::exp(-x * x), 0.0);
  });
}

std::vector<Complex> ComplexRadialField::u_values() const {
  std::vector<Complex> u(v_.size());
  const auto& r = grid_->nodes();
  for (size_t j = 0; j < v_.size(); ++j) u[j] = v_[j] / r[j];
  return u;
}

ComplexRadialField ComplexRadialField::conjugate() const {
  std::vector<Complex> v(v_.size());
  for (size_t j = 0; j < v_.size(); ++j) v[j] = std::conj(v_[j]);
  return ComplexRadialField(grid_, std::move(v));
}

}  // namespace inls
