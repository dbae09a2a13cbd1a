#include "smokecast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smokecast {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
constexpr double kLog2Pi = 1.8378770664093453;
}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  // Acklam's algorithm.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley refinement.
  const double e = norm_cdf(x) - p;
  const double u = e / norm_pdf(x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

double log_normal_pdf(double x, double mean, double var) {
  const double r = x - mean;
  return -0.5 * (kLog2Pi + std::log(var) + r * r / var);
}

double log_gamma_pdf(double x, double shape, double rate) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double log_inv_gamma_pdf(double x, double shape, double scale) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(x) - scale / x;
}

double sample_gamma(Rng& rng, double shape, double rate) {
  // Marsaglia-Tsang; shape < 1 boosted through Gamma(shape + 1).
  if (shape < 1.0) {
    const double g = sample_gamma(rng, shape + 1.0, 1.0);
    double u = rng.uniform01();
    while (u <= 0.0) u = rng.uniform01();
    return g * std::pow(u, 1.0 / shape) / rate;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double sample_inv_gamma(Rng& rng, double shape, double scale) {
  return 1.0 / sample_gamma(rng, shape, scale);
}

namespace {

// One-sided lower-truncated standard normal, support [a, inf).
double truncated_std_lower(Rng& rng, double a) {
  if (a < 0.45) {
    for (;;) {
      const double z = rng.normal();
      if (z >= a) return z;
    }
  }
  // Robert's exponential rejection for the tail.
  const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double z = a + rng.exponential() / alpha;
    const double rho = std::exp(-0.5 * (z - alpha) * (z - alpha));
    if (rng.uniform01() <= rho) return z;
  }
}

// Two-sided in the far right tail (0 <= a < b): uniform proposal with
// exp((a^2 - z^2)/2) acceptance.
double truncated_std_tail_interval(Rng& rng, double a, double b) {
  for (;;) {
    const double z = rng.uniform(a, b);
    if (rng.uniform01() <= std::exp(0.5 * (a * a - z * z))) return z;
  }
}

}  // namespace

double sample_truncated_normal(double mean, double variance, double lower, double upper,
                               Rng& rng) {
  if (!(lower < upper)) throw EmptySupport("truncated normal: lower >= upper");
  const double sd = std::sqrt(variance);
  const double a = (lower - mean) / sd;
  const double b = (upper - mean) / sd;
  const bool a_inf = std::isinf(a) && a < 0.0;
  const bool b_inf = std::isinf(b) && b > 0.0;

  double z;
  if (a_inf && b_inf) {
    z = rng.normal();
  } else if (b_inf) {
    z = truncated_std_lower(rng, a);
  } else if (a_inf) {
    z = -truncated_std_lower(rng, -b);
  } else {
    const double pa = norm_cdf(a);
    const double pb = norm_cdf(b);
    const double mass = pb - pa;
    if (mass > 0.05) {
      for (;;) {
        z = rng.normal();
        if (z >= a && z <= b) break;
      }
    } else if (a >= 6.0) {
      z = truncated_std_tail_interval(rng, a, b);
    } else if (b <= -6.0) {
      z = -truncated_std_tail_interval(rng, -b, -a);
    } else {
      // Narrow central interval: inverse CDF keeps full double resolution.
      double u = pa + (pb - pa) * rng.uniform01();
      u = std::min(std::max(u, std::numeric_limits<double>::min()),
                   1.0 - std::numeric_limits<double>::epsilon());
      z = norm_quantile(u);
      z = std::min(std::max(z, a), b);
    }
  }
  return mean + sd * z;
}

double truncated_normal_mean(double mean, double variance, double lower, double upper) {
  const double sd = std::sqrt(variance);
  const double a = (lower - mean) / sd;
  const double b = (upper - mean) / sd;
  const double pa = std::isinf(a) ? 0.0 : norm_cdf(a);
  const double pb = std::isinf(b) ? 1.0 : norm_cdf(b);
  const double da = std::isinf(a) ? 0.0 : norm_pdf(a);
  const double db = std::isinf(b) ? 0.0 : norm_pdf(b);
  return mean + sd * (da - db) / (pb - pa);
}

double truncated_normal_var(double mean, double variance, double lower, double upper) {
  const double sd = std::sqrt(variance);
  const double a = (lower - mean) / sd;
  const double b = (upper - mean) / sd;
  const double pa = std::isinf(a) ? 0.0 : norm_cdf(a);
  const double pb = std::isinf(b) ? 1.0 : norm_cdf(b);
  const double da = std::isinf(a) ? 0.0 : norm_pdf(a);
  const double db = std::isinf(b) ? 0.0 : norm_pdf(b);
  const double z = pb - pa;
  const double t1 = (std::isinf(a) ? 0.0 : a * da) - (std::isinf(b) ? 0.0 : b * db);
  const double t2 = (da - db) / z;
  return variance * (1.0 + t1 / z - t2 * t2);
}

double quantile_type7(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = (static_cast<double>(n) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double quantile_of(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return quantile_type7(values, p);
}

double median_of(std::vector<double> values) { return quantile_of(std::move(values), 0.5); }

}  // namespace smokecast
