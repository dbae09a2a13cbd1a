#pragma once

namespace smokecast {

// Overflow-safe standard logistic 1/(1+exp(-t)).
double logistic(double t);

// Rise-peak-decline curve over birth cohorts, anchored at 1873:
//   g(c) = k*S(d1*(c - 1873 - d2)) - k*S(d3*(c - 1873 - d2 - d4)).
// The 80+ variant shifts the second transition by `delta`.
struct DoubleLogisticParams {
  double d1 = 0.1;   // first rate, > 0
  double d2 = 20.0;  // offset (years past 1873)
  double d3 = 0.1;   // second rate, > 0
  double d4 = 40.0;  // duration between transitions (years)
  double k = 0.3;    // peak level
  double delta = 0.0;

  DoubleLogisticParams shifted() const {
    DoubleLogisticParams p = *this;
    p.d4 += delta;
    p.delta = 0.0;
    return p;
  }
};

double cohort_curve(double cohort, const DoubleLogisticParams& p);

inline constexpr double kCohortAnchor = 1873.0;

// Slow-rapid-slow gains curve in life expectancy:
//   gain(e) = w*S((4.4/a2)(e - a1 - a2/2)) + (z-w)*S((4.4/a4)(e - a1-a2-a3 - a4/2)).
// A zero transition width degenerates to the step-function limit.
struct GainCurveParams {
  double a1 = 15.0, a2 = 40.0, a3 = 0.0, a4 = 20.0;
  double w = 3.0;  // mid-transition pace, years per period
  double z = 0.4;  // asymptotic gain per period
};

double gain_curve(double e0, const GainCurveParams& p);

}  // namespace smokecast
