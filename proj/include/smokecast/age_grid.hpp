#pragma once

#include <optional>
#include <vector>

#include "smokecast/common.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(InvalidAgeGrid);
SMOKECAST_DEFINE_ERROR(InvalidPeriod);

struct AgeGroup {
  int lower = 0;
  int width = 5;        // ignored for the open-ended group
  bool open = false;    // [lower, inf)
};

// Ascending age groups, exactly one open group, and it is last.
class AgeGrid {
 public:
  explicit AgeGrid(std::vector<AgeGroup> groups);

  // {0, 1-4, 5-9, ..., (open_age)+}; the conventional abridged grid.
  static AgeGrid abridged(int open_age = 100);
  // Lower bounds only; widths inferred from gaps, last group open.
  static AgeGrid from_lower_bounds(const std::vector<int>& lowers);

  std::size_t size() const { return groups_.size(); }
  const AgeGroup& operator[](std::size_t i) const { return groups_[i]; }
  const std::vector<AgeGroup>& groups() const { return groups_; }
  std::optional<std::size_t> index_of(int lower) const;
  int open_age() const { return groups_.back().lower; }

  bool operator==(const AgeGrid& other) const;

 private:
  std::vector<AgeGroup> groups_;
};

// The nine age groups carrying distinct smoking-attributable fractions.
inline constexpr int kSafAges[9] = {40, 45, 50, 55, 60, 65, 70, 75, 80};
inline constexpr int kNumSafAges = 9;

// Five-year periods labeled by their mid-period year (start + 3),
// e.g. 1950-1955 -> 1953.
struct PeriodLabel {
  int start_year = 0;
  int label() const { return start_year + 3; }
  static PeriodLabel from_label(int label_year) { return {label_year - 3}; }
};

// Accepts either a start year (multiple of 5) or a label year (start + 3)
// and normalizes to the start year. Anything else is rejected.
int normalize_period_year(int year);

// 13 estimation periods 1950-2015 and 9 forecast periods 2015-2060.
std::vector<int> estimation_period_starts();
std::vector<int> forecast_period_starts(int horizon = 9);

}  // namespace smokecast
