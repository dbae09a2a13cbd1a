#include "smokecast/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "smokecast/csv.hpp"
#include "smokecast/stats.hpp"

namespace smokecast {

std::vector<double> TrajectorySet::Entry::draws_for_period(std::size_t period) const {
  std::vector<double> out(n_draws);
  for (std::size_t d = 0; d < n_draws; ++d) out[d] = at(d, period);
  return out;
}

void TrajectorySet::append_draws(const std::string& country, const std::vector<int>& periods,
                                 std::span<const double> draw_rows, std::size_t n_draws) {
  if (draw_rows.size() != n_draws * periods.size())
    throw DrawCountMismatch("draw rows do not tile draws x periods");
  auto& e = by_country[country];
  if (e.period_starts.empty()) {
    e.period_starts = periods;
  } else if (e.period_starts != periods) {
    throw DrawCountMismatch("period axis mismatch when appending draws for " + country);
  }
  e.values.insert(e.values.end(), draw_rows.begin(), draw_rows.end());
  e.n_draws += n_draws;
}

void TrajectorySet::save_csv(const std::string& path) const {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [country, e] : by_country)
    for (std::size_t d = 0; d < e.n_draws; ++d)
      for (std::size_t t = 0; t < e.period_starts.size(); ++t)
        rows.push_back({country, to_string(sex), std::to_string(e.period_starts[t]),
                        std::to_string(d), format_double(e.at(d, t))});
  write_delimited(path, {"country", "sex", "period_start", "draw", "value"}, rows);
}

TrajectorySet TrajectorySet::load_csv(const std::string& path) {
  const CsvTable table = read_delimited(path);
  const std::size_t c_country = table.column("country");
  const std::size_t c_sex = table.column("sex");
  const std::size_t c_period = table.column("period_start");
  const std::size_t c_draw = table.column("draw");
  const std::size_t c_value = table.column("value");

  // country -> draw -> period -> value
  std::map<std::string, std::map<long, std::map<int, double>>> cells;
  TrajectorySet out;
  bool sex_set = false;
  for (const auto& row : table.rows) {
    const auto period = parse_long(row[c_period]);
    const auto draw = parse_long(row[c_draw]);
    const auto value = parse_double(row[c_value]);
    if (!period || !draw || !value) throw ParseError(path + ": non-numeric trajectory row");
    if (!sex_set) {
      out.sex = sex_from_string(row[c_sex]);
      sex_set = true;
    }
    cells[row[c_country]][*draw][static_cast<int>(*period)] = *value;
  }
  for (auto& [country, draws] : cells) {
    Entry e;
    for (auto& [d, by_period] : draws) {
      if (e.period_starts.empty())
        for (auto& [p, v] : by_period) e.period_starts.push_back(p);
      for (int p : e.period_starts) {
        auto it = by_period.find(p);
        if (it == by_period.end()) throw ParseError(path + ": ragged draw for " + country);
        e.values.push_back(it->second);
      }
      ++e.n_draws;
    }
    out.by_country[country] = std::move(e);
  }
  return out;
}

QuantileTable quantile_summary(const TrajectorySet& traj, std::span<const double> probs) {
  QuantileTable table;
  table.probs.assign(probs.begin(), probs.end());
  for (const auto& [country, e] : traj.by_country) {
    if (e.n_draws < 100)
      throw TooFewDraws(country + " has " + std::to_string(e.n_draws) +
                        " draws; quantile summaries need at least 100");
    for (std::size_t t = 0; t < e.period_starts.size(); ++t) {
      auto draws = e.draws_for_period(t);
      std::sort(draws.begin(), draws.end());
      QuantileTable::Row row;
      row.country = country;
      row.period_start = e.period_starts[t];
      for (double p : probs) row.values.push_back(quantile_type7(draws, p));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

void QuantileTable::save_csv(const std::string& path, Sex sex) const {
  std::vector<std::string> header = {"country", "sex", "period_start"};
  for (double p : probs) header.push_back("q" + format_double(p));
  std::vector<std::vector<std::string>> out_rows;
  for (const auto& row : rows) {
    std::vector<std::string> r = {row.country, to_string(sex), std::to_string(row.period_start)};
    for (double v : row.values) r.push_back(format_double(v));
    out_rows.push_back(std::move(r));
  }
  write_delimited(path, header, out_rows);
}

double QuantileTable::value(const std::string& country, int period_start, double prob) const {
  for (const auto& row : rows) {
    if (row.country != country || row.period_start != period_start) continue;
    for (std::size_t i = 0; i < probs.size(); ++i)
      if (std::abs(probs[i] - prob) < 1e-12) return row.values[i];
  }
  throw Error("quantile table has no cell for " + country + "/" + std::to_string(period_start) +
              " at p=" + format_double(prob));
}

}  // namespace smokecast
