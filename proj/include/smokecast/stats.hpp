#pragma once

#include <span>
#include <vector>

#include "smokecast/common.hpp"
#include "smokecast/rng.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(EmptySupport);

// Standard normal density, CDF, and quantile (Acklam's rational
// approximation refined with one Halley step; |error| < 1e-14).
double norm_pdf(double x);
double norm_cdf(double x);
double norm_quantile(double p);

double log_normal_pdf(double x, double mean, double var);
// Gamma(shape, rate): mean shape/rate.
double log_gamma_pdf(double x, double shape, double rate);
// InvGamma(shape, scale): mean scale/(shape - 1).
double log_inv_gamma_pdf(double x, double shape, double scale);

double sample_gamma(Rng& rng, double shape, double rate);
double sample_inv_gamma(Rng& rng, double shape, double scale);

// Draw from N(mean, variance) restricted to [lower, upper]; either bound may
// be infinite. Throws EmptySupport when lower >= upper.
double sample_truncated_normal(double mean, double variance, double lower, double upper,
                               Rng& rng);

// Closed-form moments of the truncated normal, used by tests and nowhere in
// the samplers themselves.
double truncated_normal_mean(double mean, double variance, double lower, double upper);
double truncated_normal_var(double mean, double variance, double lower, double upper);

// Type-7 empirical quantile (linear interpolation of order statistics).
// `sorted` must be ascending and non-empty.
double quantile_type7(std::span<const double> sorted, double p);
// Convenience: copies, sorts, evaluates.
double quantile_of(std::vector<double> values, double p);
double median_of(std::vector<double> values);

}  // namespace smokecast
