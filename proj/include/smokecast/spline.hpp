#pragma once

#include <span>
#include <string>
#include <vector>

#include "smokecast/common.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(InsufficientSpread);

// Least-squares cubic regression spline (truncated power basis) with knots
// at equally spaced quantiles of x.
struct RegressionSpline {
  std::vector<double> knots;
  std::vector<double> coef;  // 1, x, x^2, x^3, (x-k_j)^3_+
  double x_min = 0.0, x_max = 0.0;

  double eval(double x) const;  // evaluates the raw polynomial, no clamping
};

RegressionSpline fit_cubic_spline(std::span<const double> x, std::span<const double> y,
                                  int n_knots);

// Standard-deviation profile fitted to absolute residuals. Evaluation is
// clamped to the fitted range (constant beyond the largest fitted value)
// and floored at `floor`.
struct VarianceSpline {
  RegressionSpline spline;
  double clamp_hi = 0.0;  // largest fitted predictor value
  double clamp_lo = 0.0;
  double floor = 0.01;

  double operator()(double e) const;

  void save_csv(const std::string& path) const;
  static VarianceSpline load_csv(const std::string& path);
  static VarianceSpline constant(double value);
};

VarianceSpline fit_variance_spline(std::span<const double> e0ns,
                                   std::span<const double> abs_residual, int n_knots = 5);

}  // namespace smokecast
