#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "smokecast/age_grid.hpp"
#include "smokecast/common.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(RankDeficient);
SMOKECAST_DEFINE_ERROR(BracketFailure);

// Log-rate decomposition log m_xt ~ a_x + b_x k_t with sum(b) = 1 and
// sum(k) = 0, fitted by the leading singular pair of the centered log-rate
// matrix.
struct LeeCarterParams {
  std::vector<double> a;  // mean log rate per age
  std::vector<double> b;  // age response, sums to 1
  std::vector<double> k;  // period index, sums to 0
  double reconstruction_rmse = 0.0;
  long floored_zero_rates = 0;

  std::vector<double> rates_at(double k_value) const;  // exp(a + b k)
};

// rates_by_period: one full-grid rate vector per period, in period order.
// Zero rates are floored at 1e-6 before taking logs (count reported).
LeeCarterParams lee_carter_fit(const AgeGrid& grid,
                               const std::vector<std::vector<double>>& rates_by_period);

enum class Coherence { none, shared_bx };

// Per-country fits; with Coherence::shared_bx the age responses are
// averaged across countries, renormalized, and each country's k_t refit by
// projection.
std::map<std::string, LeeCarterParams> lee_carter_fit_panel(
    const AgeGrid& grid,
    const std::map<std::string, std::vector<std::vector<double>>>& rates_by_country,
    Coherence coherence = Coherence::shared_bx);

// Solves for the scalar k whose rate schedule exp(a + b k) reproduces the
// target life expectancy to 1e-6 years (safeguarded bisection with bracket
// expansion inside k in [-200, 200]); returns the rate vector.
std::vector<double> rates_for_target_e0(const AgeGrid& grid, const LeeCarterParams& params,
                                        double target_e0);

// Plain Lee-Carter e0 forecaster used as the validation baseline: fits on
// all-cause rates and extrapolates k_t by a random walk with drift.
struct LeeCarterForecast {
  std::vector<int> period_starts;
  std::size_t n_draws = 0;
  std::vector<double> e0_draws;  // row-major draw x period
};

LeeCarterForecast lee_carter_baseline_forecast(const AgeGrid& grid,
                                               const std::vector<std::vector<double>>& history,
                                               int horizon, std::size_t n_draws,
                                               std::uint64_t seed);

}  // namespace smokecast
