#include "smokecast/double_logistic.hpp"

#include <cmath>

namespace smokecast {

double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double cohort_curve(double cohort, const DoubleLogisticParams& p) {
  const double u = cohort - kCohortAnchor - p.d2;
  return p.k * logistic(p.d1 * u) - p.k * logistic(p.d3 * (u - p.d4));
}

namespace {
double logistic_or_step(double e, double center, double width) {
  if (width == 0.0) return e > center ? 1.0 : (e < center ? 0.0 : 0.5);
  return logistic((4.4 / width) * (e - center - 0.5 * width));
}
}  // namespace

double gain_curve(double e0, const GainCurveParams& p) {
  const double first = p.w * logistic_or_step(e0, p.a1, p.a2);
  const double second = (p.z - p.w) * logistic_or_step(e0, p.a1 + p.a2 + p.a3, p.a4);
  return first + second;
}

}  // namespace smokecast
