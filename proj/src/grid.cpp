#include "inls/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace inls {

namespace {
// FFTW plan creation is not thread-safe; execution via the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RadialGrid::Plans {
  fftw_plan dst = nullptr;
  fftw_plan dct = nullptr;
  std::vector<double> dst_buf;
  std::vector<double> dct_in, dct_out;

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (dst) fftw_destroy_plan(dst);
    if (dct) fftw_destroy_plan(dct);
  }
};

RadialGrid::RadialGrid(double r_max, int n, const Rational& b)
    : r_max_(r_max), n_(n), b_(b), b_value_(to_double(b)) {
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
  if (n < 8) throw std::invalid_argument("grid needs at least 8 nodes");
  if (b < Rational(0) || b >= Rational(1, 2))
    throw std::invalid_argument("grid weight exponent must satisfy 0 <= b < 1/2");

  dr_ = r_max_ / (n_ + 1);
  r_.resize(n_);
  k_.resize(n_);
  w_.resize(n_);
  const double pi = 4.0 * std::atan(1.0);
  for (int j = 0; j < n_; ++j) {
    r_[j] = (j + 1) * dr_;
    k_[j] = (j + 1) * pi / r_max_;
    w_[j] = std::pow(r_[j], -b_value_);
  }

  plans_ = std::make_unique<Plans>();
  plans_->dst_buf.assign(n_, 0.0);
  plans_->dct_in.assign(n_ + 2, 0.0);
  plans_->dct_out.assign(n_ + 2, 0.0);
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE keeps plan selection deterministic run to run.
  plans_->dst = fftw_plan_r2r_1d(n_, plans_->dst_buf.data(), plans_->dst_buf.data(),
                                 FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->dct = fftw_plan_r2r_1d(n_ + 2, plans_->dct_in.data(), plans_->dct_out.data(),
                                 FFTW_REDFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans_->dst || !plans_->dct) throw std::runtime_error("fftw plan creation failed");
}

RadialGrid::~RadialGrid() = default;

void RadialGrid::sine_transform(const double* in, double* out) const {
  fftw_execute_r2r(plans_->dst, const_cast<double*>(in), out);
}

void RadialGrid::cosine_series(const double* in, double* out) const {
  // REDFT00 of length n+2 with zero endpoints:
  //   y_j = x_0 + (-1)^j x_{n+1} + 2 sum_{m=1}^{n} x_m cos(pi j m/(n+1)).
  std::vector<double> ext_in(n_ + 2), ext_out(n_ + 2);
  ext_in[0] = 0.0;
  ext_in[n_ + 1] = 0.0;
  for (int m = 0; m < n_; ++m) ext_in[m + 1] = 0.5 * in[m];
  fftw_execute_r2r(plans_->dct, ext_in.data(), ext_out.data());
  std::memcpy(out, ext_out.data() + 1, n_ * sizeof(double));
}

std::shared_ptr<const RadialGrid> make_grid(double r_max, int n, const Rational& b) {
  return std::make_shared<const RadialGrid>(r_max, n, b);
}

}  // namespace inls
