#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "smokecast/common.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(TooFewDraws);
SMOKECAST_DEFINE_ERROR(DrawCountMismatch);

// Forecast draws per country and period for one sex.
class TrajectorySet {
 public:
  struct Entry {
    std::vector<int> period_starts;
    std::size_t n_draws = 0;
    std::vector<double> values;  // row-major draw x period

    double at(std::size_t draw, std::size_t period) const {
      return values[draw * period_starts.size() + period];
    }
    std::vector<double> draws_for_period(std::size_t period) const;
  };

  Sex sex = Sex::male;
  std::map<std::string, Entry> by_country;

  void append_draws(const std::string& country, const std::vector<int>& period_starts,
                    std::span<const double> draw_rows, std::size_t n_draws);

  void save_csv(const std::string& path) const;
  static TrajectorySet load_csv(const std::string& path);
};

inline constexpr double kDefaultProbs[5] = {0.025, 0.1, 0.5, 0.9, 0.975};

struct QuantileTable {
  std::vector<double> probs;
  struct Row {
    std::string country;
    int period_start;
    std::vector<double> values;  // aligned with probs
  };
  std::vector<Row> rows;

  void save_csv(const std::string& path, Sex sex) const;
  double value(const std::string& country, int period_start, double prob) const;
};

// Type-7 empirical quantiles per (country, period). Requires >= 100 draws.
QuantileTable quantile_summary(const TrajectorySet& traj,
                               std::span<const double> probs = kDefaultProbs);

}  // namespace smokecast
