#include "smokecast/age_grid.hpp"

#include <string>

namespace smokecast {

AgeGrid::AgeGrid(std::vector<AgeGroup> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) throw InvalidAgeGrid("age grid is empty");
  for (std::size_t i = 0; i + 1 < groups_.size(); ++i) {
    if (groups_[i].open) throw InvalidAgeGrid("open-ended age group must be last");
    if (groups_[i].lower >= groups_[i + 1].lower)
      throw InvalidAgeGrid("age group lower bounds must be strictly increasing");
    if (groups_[i].lower + groups_[i].width != groups_[i + 1].lower)
      throw InvalidAgeGrid("age groups must tile the axis without gaps");
  }
  if (!groups_.back().open) throw InvalidAgeGrid("last age group must be open-ended");
}

AgeGrid AgeGrid::abridged(int open_age) {
  std::vector<AgeGroup> g;
  g.push_back({0, 1, false});
  g.push_back({1, 4, false});
  for (int lower = 5; lower < open_age; lower += 5) g.push_back({lower, 5, false});
  g.push_back({open_age, 0, true});
  return AgeGrid(std::move(g));
}

AgeGrid AgeGrid::from_lower_bounds(const std::vector<int>& lowers) {
  if (lowers.empty()) throw InvalidAgeGrid("age grid is empty");
  std::vector<AgeGroup> g;
  for (std::size_t i = 0; i < lowers.size(); ++i) {
    const bool open = i + 1 == lowers.size();
    const int width = open ? 0 : lowers[i + 1] - lowers[i];
    g.push_back({lowers[i], width, open});
  }
  return AgeGrid(std::move(g));
}

std::optional<std::size_t> AgeGrid::index_of(int lower) const {
  for (std::size_t i = 0; i < groups_.size(); ++i)
    if (groups_[i].lower == lower) return i;
  return std::nullopt;
}

bool AgeGrid::operator==(const AgeGrid& other) const {
  if (groups_.size() != other.groups_.size()) return false;
  for (std::size_t i = 0; i < groups_.size(); ++i)
    if (groups_[i].lower != other.groups_[i].lower || groups_[i].open != other.groups_[i].open)
      return false;
  return true;
}

int normalize_period_year(int year) {
  if (year % 5 == 0) return year;
  if ((year - 3) % 5 == 0) return year - 3;
  throw InvalidPeriod("year " + std::to_string(year) +
                      " is neither a period start (multiple of 5) nor a mid-period label");
}

std::vector<int> estimation_period_starts() {
  std::vector<int> out;
  for (int y = 1950; y <= 2010; y += 5) out.push_back(y);
  return out;
}

std::vector<int> forecast_period_starts(int horizon) {
  std::vector<int> out;
  for (int i = 0; i < horizon; ++i) out.push_back(2015 + 5 * i);
  return out;
}

}  // namespace smokecast
