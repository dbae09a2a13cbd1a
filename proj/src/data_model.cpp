#include "smokecast/data_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace smokecast {

Sex sex_from_string(const std::string& s) {
  if (s == "male" || s == "m" || s == "M" || s == "Male") return Sex::male;
  if (s == "female" || s == "f" || s == "F" || s == "Female") return Sex::female;
  throw UnknownSex("unknown sex '" + s + "' (expected male or female)");
}

const char* to_string(Sex s) { return s == Sex::male ? "male" : "female"; }

ColumnMap mortality_columns() {
  ColumnMap m;
  m.value = "mx";
  return m;
}
ColumnMap assaf_columns() {
  ColumnMap m;
  m.value = "y";
  return m;
}
ColumnMap e0_columns() {
  ColumnMap m;
  m.value = "e0";
  return m;
}

namespace {

std::size_t sex_index(Sex s) { return s == Sex::male ? 0 : 1; }

// Collects issues of one kind, then raises them as a single typed error in
// strict mode.
class IssueSink {
 public:
  explicit IssueSink(std::vector<LoadIssue>* out) : out_(out) {}

  void add(const std::string& kind, long row, const std::string& detail) {
    issues_.push_back({kind, row, detail});
  }
  bool strict() const { return out_ == nullptr; }
  bool any() const { return !issues_.empty(); }

  template <typename E>
  void raise_or_record(const std::string& kind) {
    if (issues_.empty()) return;
    if (out_) {
      for (auto& i : issues_)
        if (i.kind == kind) out_->push_back(i);
      std::erase_if(issues_, [&](const LoadIssue& i) { return i.kind == kind; });
      return;
    }
    std::ostringstream msg;
    bool first = true;
    long n = 0;
    for (const auto& i : issues_) {
      if (i.kind != kind) continue;
      ++n;
      if (!first) msg << "; ";
      msg << "row " << i.row << ": " << i.detail;
      first = false;
    }
    if (n) throw E(kind + " (" + std::to_string(n) + " row(s)): " + msg.str());
  }

  template <typename E>
  void raise_structural(const std::string& kind, const std::string& detail) {
    if (out_) {
      out_->push_back({kind, 0, detail});
      return;
    }
    throw E(kind + ": " + detail);
  }

 private:
  std::vector<LoadIssue>* out_;
  std::vector<LoadIssue> issues_;
};

struct RawRow {
  long row;
  std::string country;
  Sex sex;
  int period;
  int age;
  double value;
};

// Shared row scan for the three file kinds; age column optional (e0 files).
std::vector<RawRow> scan_rows(const CsvTable& table, const ColumnMap& schema, bool has_age,
                              IssueSink& sink) {
  const std::size_t c_country = table.column(schema.country);
  const std::size_t c_sex = table.column(schema.sex);
  const std::size_t c_period = table.column(schema.period);
  const std::size_t c_age = has_age ? table.column(schema.age) : 0;
  const std::size_t c_value = table.column(schema.value);

  std::vector<RawRow> out;
  long row_no = 0;
  for (const auto& fields : table.rows) {
    ++row_no;
    const std::size_t need = std::max({c_country, c_sex, c_period, c_value, has_age ? c_age : 0});
    if (fields.size() <= need) {
      sink.add("unparseable", row_no, "too few fields");
      continue;
    }
    RawRow r;
    r.row = row_no;
    r.country = fields[c_country];
    try {
      r.sex = sex_from_string(fields[c_sex]);
    } catch (const UnknownSex& e) {
      sink.add("unparseable", row_no, e.what());
      continue;
    }
    const auto period = parse_long(fields[c_period]);
    const auto value = parse_double(fields[c_value]);
    if (!period || !value || !std::isfinite(*value)) {
      sink.add("unparseable", row_no, "non-numeric period or value");
      continue;
    }
    try {
      r.period = normalize_period_year(static_cast<int>(*period));
    } catch (const InvalidPeriod& e) {
      sink.add("unparseable", row_no, e.what());
      continue;
    }
    if (has_age) {
      const auto age = parse_long(fields[c_age]);
      if (!age) {
        sink.add("unparseable", row_no, "non-numeric age");
        continue;
      }
      r.age = static_cast<int>(*age);
    } else {
      r.age = -1;
    }
    r.value = *value;
    out.push_back(std::move(r));
  }
  sink.raise_or_record<ParseError>("unparseable");
  return out;
}

}  // namespace

void MortalitySurface::set(const std::string& country, Sex sex, int period_start,
                           std::vector<double> rates) {
  if (rates.size() != grid_.size())
    throw MissingAgeGroup("slice for " + country + " does not cover the full age grid");
  data_[country][sex_index(sex)][period_start] = std::move(rates);
}

bool MortalitySurface::has(const std::string& country, Sex sex, int period_start) const {
  auto it = data_.find(country);
  if (it == data_.end()) return false;
  const auto& m = it->second[sex_index(sex)];
  return m.find(period_start) != m.end();
}

std::span<const double> MortalitySurface::rates(const std::string& country, Sex sex,
                                                int period_start) const {
  auto it = data_.find(country);
  if (it != data_.end()) {
    const auto& m = it->second[sex_index(sex)];
    auto jt = m.find(period_start);
    if (jt != m.end()) return jt->second;
  }
  throw EmptySlice("no mortality slice for " + country + "/" + to_string(sex) + "/" +
                   std::to_string(period_start));
}

std::vector<std::string> MortalitySurface::countries() const {
  std::vector<std::string> out;
  for (const auto& [c, _] : data_) out.push_back(c);
  return out;
}

std::vector<int> MortalitySurface::period_starts(const std::string& country, Sex sex) const {
  std::vector<int> out;
  auto it = data_.find(country);
  if (it == data_.end()) return out;
  for (const auto& [p, _] : it->second[sex_index(sex)]) out.push_back(p);
  return out;
}

void AssafSurface::set(const std::string& country, Sex sex, int period_start, const Core& y) {
  for (double v : y)
    if (!(v >= 0.0 && v < 1.0))
      throw OutOfRangeFraction("fraction " + format_double(v) + " outside [0,1)");
  data_[country][sex_index(sex)][period_start] = y;
}

bool AssafSurface::has(const std::string& country, Sex sex, int period_start) const {
  auto it = data_.find(country);
  if (it == data_.end()) return false;
  const auto& m = it->second[sex_index(sex)];
  return m.find(period_start) != m.end();
}

const AssafSurface::Core& AssafSurface::core(const std::string& country, Sex sex,
                                             int period_start) const {
  auto it = data_.find(country);
  if (it != data_.end()) {
    const auto& m = it->second[sex_index(sex)];
    auto jt = m.find(period_start);
    if (jt != m.end()) return jt->second;
  }
  throw EmptySlice("no ASSAF slice for " + country + "/" + to_string(sex) + "/" +
                   std::to_string(period_start));
}

std::vector<double> AssafSurface::full(const std::string& country, Sex sex, int period_start,
                                       const AgeGrid& grid) const {
  const Core& c = core(country, sex, period_start);
  std::map<int, double> raw;
  for (int i = 0; i < kNumSafAges; ++i) raw[kSafAges[i]] = c[i];
  return harmonize_assaf_ages(raw, grid);
}

std::vector<std::string> AssafSurface::countries() const {
  std::vector<std::string> out;
  for (const auto& [c, _] : data_) out.push_back(c);
  return out;
}

std::vector<int> AssafSurface::period_starts(const std::string& country, Sex sex) const {
  std::vector<int> out;
  auto it = data_.find(country);
  if (it == data_.end()) return out;
  for (const auto& [p, _] : it->second[sex_index(sex)]) out.push_back(p);
  return out;
}

void E0Series::set(const std::string& country, Sex sex, int period_start, double e0) {
  data_[country][sex_index(sex)][period_start] = e0;
}

bool E0Series::has(const std::string& country, Sex sex, int period_start) const {
  auto it = data_.find(country);
  if (it == data_.end()) return false;
  const auto& m = it->second[sex_index(sex)];
  return m.find(period_start) != m.end();
}

double E0Series::at(const std::string& country, Sex sex, int period_start) const {
  auto it = data_.find(country);
  if (it != data_.end()) {
    const auto& m = it->second[sex_index(sex)];
    auto jt = m.find(period_start);
    if (jt != m.end()) return jt->second;
  }
  throw EmptySlice("no e0 entry for " + country + "/" + to_string(sex) + "/" +
                   std::to_string(period_start));
}

std::vector<std::string> E0Series::countries() const {
  std::vector<std::string> out;
  for (const auto& [c, _] : data_) out.push_back(c);
  return out;
}

std::vector<int> E0Series::period_starts(const std::string& country, Sex sex) const {
  std::vector<int> out;
  auto it = data_.find(country);
  if (it == data_.end()) return out;
  for (const auto& [p, _] : it->second[sex_index(sex)]) out.push_back(p);
  return out;
}

std::vector<std::pair<int, double>> E0Series::series(const std::string& country, Sex sex) const {
  std::vector<std::pair<int, double>> out;
  auto it = data_.find(country);
  if (it == data_.end()) return out;
  for (const auto& [p, v] : it->second[sex_index(sex)]) out.emplace_back(p, v);
  return out;
}

std::vector<double> harmonize_assaf_ages(const std::map<int, double>& raw, const AgeGrid& grid) {
  for (int age : kSafAges) {
    auto it = raw.find(age);
    if (it == raw.end())
      throw MissingCoreGroup("age group " + std::to_string(age) + " absent from ASSAF input");
    if (!(it->second >= 0.0 && it->second < 1.0))
      throw OutOfRangeFraction("ASSAF " + format_double(it->second) + " for age " +
                               std::to_string(age) + " outside [0,1)");
  }
  const double y80 = raw.at(80);
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int lower = grid[i].lower;
    if (lower < 40) {
      out[i] = 0.0;
    } else if (lower >= 85) {
      out[i] = y80;
    } else {
      out[i] = raw.at(lower - lower % 5);
    }
  }
  return out;
}

AgeCohortMatrix AgeCohortMatrix::build(const AssafSurface& surface, const std::string& country,
                                       Sex sex) {
  const auto periods = surface.period_starts(country, sex);
  if (periods.empty())
    throw EmptySlice("no ASSAF periods for " + country + "/" + to_string(sex));
  AgeCohortMatrix m;
  std::set<int> cohorts;
  for (int p : periods) {
    const int label = PeriodLabel{p}.label();
    const auto& core = surface.core(country, sex, p);
    for (int i = 0; i < kNumSafAges; ++i) {
      const int c = label - kSafAges[i];
      m.rows_[i][c] = core[i];
      cohorts.insert(c);
    }
  }
  m.cohorts_.assign(cohorts.begin(), cohorts.end());
  return m;
}

std::optional<double> AgeCohortMatrix::cell(int age_lower, int cohort) const {
  for (int i = 0; i < kNumSafAges; ++i) {
    if (kSafAges[i] != age_lower) continue;
    auto it = rows_[i].find(cohort);
    if (it == rows_[i].end()) return std::nullopt;
    return it->second;
  }
  return std::nullopt;
}

std::vector<std::tuple<int, int, double>> AgeCohortMatrix::observed_cells() const {
  std::vector<std::tuple<int, int, double>> out;
  for (int i = 0; i < kNumSafAges; ++i)
    for (const auto& [c, y] : rows_[i]) out.emplace_back(kSafAges[i], c, y);
  return out;
}

std::map<int, std::map<int, double>> AgeCohortMatrix::to_period_cells() const {
  std::map<int, std::map<int, double>> out;
  for (int i = 0; i < kNumSafAges; ++i)
    for (const auto& [c, y] : rows_[i]) {
      const int label = c + kSafAges[i];
      out[label - 3][kSafAges[i]] = y;
    }
  return out;
}

MortalitySurface load_mortality_surface(const std::string& path, const ColumnMap& schema,
                                        std::vector<LoadIssue>* issues, char delim) {
  const CsvTable table = read_delimited(path, delim);
  IssueSink sink(issues);
  auto rows = scan_rows(table, schema, /*has_age=*/true, sink);

  std::set<int> ages;
  for (const auto& r : rows) ages.insert(r.age);
  if (ages.empty()) {
    sink.raise_structural<EmptySlice>("empty", path + " has no usable rows");
    return MortalitySurface(AgeGrid::abridged());
  }
  AgeGrid grid = AgeGrid::from_lower_bounds({ages.begin(), ages.end()});

  for (const auto& r : rows)
    if (r.value < 0.0)
      sink.add("negative_rate", r.row,
               "m_x = " + format_double(r.value) + " for age " + std::to_string(r.age));
  sink.raise_or_record<NegativeRate>("negative_rate");

  std::map<std::tuple<std::string, Sex, int>, std::map<int, std::pair<long, double>>> slices;
  for (const auto& r : rows) {
    if (r.value < 0.0) continue;
    auto& slice = slices[{r.country, r.sex, r.period}];
    auto [it, inserted] = slice.insert({r.age, {r.row, r.value}});
    if (!inserted)
      sink.add("duplicate_key", r.row,
               r.country + "/" + to_string(r.sex) + "/" + std::to_string(r.period) + "/age " +
                   std::to_string(r.age) + " first seen at row " + std::to_string(it->second.first));
  }
  sink.raise_or_record<DuplicateKey>("duplicate_key");

  MortalitySurface surface(grid);
  for (auto& [key, slice] : slices) {
    const auto& [country, sex, period] = key;
    bool complete = true;
    std::vector<double> m(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto it = slice.find(grid[i].lower);
      if (it == slice.end()) {
        sink.raise_structural<MissingAgeGroup>(
            "missing_age_group", country + "/" + std::string(to_string(sex)) + "/" +
                                     std::to_string(period) + " lacks age " +
                                     std::to_string(grid[i].lower));
        complete = false;
        break;
      }
      m[i] = it->second.second;
    }
    if (!complete) continue;
    if (m.back() <= 0.0) {
      sink.raise_structural<NegativeRate>(
          "open_group_zero_rate", country + "/" + std::string(to_string(sex)) + "/" +
                                      std::to_string(period) + " open age group rate must be > 0");
      continue;
    }
    surface.set(country, sex, period, std::move(m));
  }
  return surface;
}

AssafSurface load_assaf_surface(const std::string& path, const ColumnMap& schema,
                                std::vector<LoadIssue>* issues, char delim) {
  const CsvTable table = read_delimited(path, delim);
  IssueSink sink(issues);
  auto rows = scan_rows(table, schema, /*has_age=*/true, sink);

  for (const auto& r : rows)
    if (!(r.value >= 0.0 && r.value < 1.0))
      sink.add("out_of_range_fraction", r.row, "y = " + format_double(r.value) + " outside [0,1)");
  sink.raise_or_record<OutOfRangeFraction>("out_of_range_fraction");

  std::map<std::tuple<std::string, Sex, int>, std::map<int, std::pair<long, double>>> slices;
  for (const auto& r : rows) {
    if (!(r.value >= 0.0 && r.value < 1.0)) continue;
    auto& slice = slices[{r.country, r.sex, r.period}];
    auto [it, inserted] = slice.insert({r.age, {r.row, r.value}});
    if (!inserted)
      sink.add("duplicate_key", r.row, "duplicate ASSAF cell, first seen at row " +
                                           std::to_string(it->second.first));
  }
  sink.raise_or_record<DuplicateKey>("duplicate_key");

  AssafSurface surface;
  for (auto& [key, slice] : slices) {
    const auto& [country, sex, period] = key;
    AssafSurface::Core core{};
    bool complete = true;
    for (int i = 0; i < kNumSafAges; ++i) {
      auto it = slice.find(kSafAges[i]);
      if (it == slice.end()) {
        sink.raise_structural<MissingCoreGroup>(
            "missing_core_group", country + "/" + std::string(to_string(sex)) + "/" +
                                      std::to_string(period) + " lacks age " +
                                      std::to_string(kSafAges[i]));
        complete = false;
        break;
      }
      core[i] = it->second.second;
    }
    if (!complete) continue;
    // Rows outside 40..80, when present, must already respect the
    // harmonization rules.
    for (const auto& [age, rv] : slice) {
      const double expected = age < 40 ? 0.0 : (age >= 85 ? core[kNumSafAges - 1] : -1.0);
      if (expected >= 0.0 && rv.second != expected)
        sink.raise_structural<HarmonizationMismatch>(
            "harmonization_mismatch",
            country + "/" + std::string(to_string(sex)) + "/" + std::to_string(period) + " age " +
                std::to_string(age) + " must carry " + format_double(expected));
    }
    surface.set(country, sex, period, core);
  }
  return surface;
}

E0Series load_e0_series(const std::string& path, const ColumnMap& schema,
                        std::vector<LoadIssue>* issues, char delim, double e0_min, double e0_max) {
  const CsvTable table = read_delimited(path, delim);
  IssueSink sink(issues);
  auto rows = scan_rows(table, schema, /*has_age=*/false, sink);

  for (const auto& r : rows)
    if (!(r.value > e0_min && r.value < e0_max))
      sink.add("out_of_range_e0", r.row, "e0 = " + format_double(r.value) + " outside (" +
                                             format_double(e0_min) + ", " + format_double(e0_max) +
                                             ")");
  sink.raise_or_record<OutOfRangeE0>("out_of_range_e0");

  E0Series series;
  std::map<std::tuple<std::string, Sex, int>, long> seen;
  for (const auto& r : rows) {
    if (!(r.value > e0_min && r.value < e0_max)) continue;
    auto [it, inserted] = seen.insert({{r.country, r.sex, r.period}, r.row});
    if (!inserted) {
      sink.add("duplicate_key", r.row,
               "duplicate e0 entry, first seen at row " + std::to_string(it->second));
      continue;
    }
    series.set(r.country, r.sex, r.period, r.value);
  }
  sink.raise_or_record<DuplicateKey>("duplicate_key");
  return series;
}

void save_mortality_surface(const MortalitySurface& s, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& country : s.countries())
    for (Sex sex : {Sex::male, Sex::female})
      for (int p : s.period_starts(country, sex)) {
        auto m = s.rates(country, sex, p);
        for (std::size_t i = 0; i < m.size(); ++i)
          rows.push_back({country, to_string(sex), std::to_string(p),
                          std::to_string(s.grid()[i].lower), format_double(m[i])});
      }
  write_delimited(path, {"country", "sex", "period_start", "age_lower", "mx"}, rows);
}

void save_assaf_surface(const AssafSurface& s, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& country : s.countries())
    for (Sex sex : {Sex::male, Sex::female})
      for (int p : s.period_starts(country, sex)) {
        const auto& core = s.core(country, sex, p);
        for (int i = 0; i < kNumSafAges; ++i)
          rows.push_back({country, to_string(sex), std::to_string(p), std::to_string(kSafAges[i]),
                          format_double(core[i])});
      }
  write_delimited(path, {"country", "sex", "period_start", "age_lower", "y"}, rows);
}

void save_e0_series(const E0Series& s, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& country : s.countries())
    for (Sex sex : {Sex::male, Sex::female})
      for (const auto& [p, v] : s.series(country, sex))
        rows.push_back({country, to_string(sex), std::to_string(p), format_double(v)});
  write_delimited(path, {"country", "sex", "period_start", "e0"}, rows);
}

}  // namespace smokecast
