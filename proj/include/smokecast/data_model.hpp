#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smokecast/age_grid.hpp"
#include "smokecast/common.hpp"
#include "smokecast/csv.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(MissingAgeGroup);
SMOKECAST_DEFINE_ERROR(NegativeRate);
SMOKECAST_DEFINE_ERROR(DuplicateKey);
SMOKECAST_DEFINE_ERROR(OutOfRangeFraction);
SMOKECAST_DEFINE_ERROR(MissingCoreGroup);
SMOKECAST_DEFINE_ERROR(HarmonizationMismatch);
SMOKECAST_DEFINE_ERROR(EmptySlice);
SMOKECAST_DEFINE_ERROR(UnknownSex);
SMOKECAST_DEFINE_ERROR(OutOfRangeE0);

// Column names of the delimited input files. Defaults match the schemas
// documented in the README; remap to load WPP- or WHO-style exports
// directly.
struct ColumnMap {
  std::string country = "country";
  std::string sex = "sex";
  std::string period = "period_start";
  std::string age = "age_lower";
  std::string value;  // set per file kind below
};

ColumnMap mortality_columns();  // value = "mx"
ColumnMap assaf_columns();      // value = "y"
ColumnMap e0_columns();         // value = "e0"

// One recoverable problem found while loading; row is 1-based over data
// rows (0 for structural issues that have no single row).
struct LoadIssue {
  std::string kind;
  long row = 0;
  std::string detail;
};

// Age x period grid of central death rates for each country and sex.
// Immutable once loaded; concurrent reads are safe.
class MortalitySurface {
 public:
  explicit MortalitySurface(AgeGrid grid) : grid_(std::move(grid)) {}

  const AgeGrid& grid() const { return grid_; }
  void set(const std::string& country, Sex sex, int period_start, std::vector<double> rates);
  bool has(const std::string& country, Sex sex, int period_start) const;
  std::span<const double> rates(const std::string& country, Sex sex, int period_start) const;
  std::vector<std::string> countries() const;
  std::vector<int> period_starts(const std::string& country, Sex sex) const;

 private:
  AgeGrid grid_;
  std::map<std::string, std::array<std::map<int, std::vector<double>>, 2>> data_;
};

// Per-period smoking-attributable fractions. Only the nine distinct-valued
// age groups 40..80 are stored; the full-grid expansion is derived on
// demand (zero below 40, the 80-84 value for 85 and older).
class AssafSurface {
 public:
  using Core = std::array<double, kNumSafAges>;

  void set(const std::string& country, Sex sex, int period_start, const Core& y);
  bool has(const std::string& country, Sex sex, int period_start) const;
  const Core& core(const std::string& country, Sex sex, int period_start) const;
  std::vector<double> full(const std::string& country, Sex sex, int period_start,
                           const AgeGrid& grid) const;
  std::vector<std::string> countries() const;
  std::vector<int> period_starts(const std::string& country, Sex sex) const;

 private:
  std::map<std::string, std::array<std::map<int, Core>, 2>> data_;
};

// Map (country, sex, period) -> life expectancy at birth.
class E0Series {
 public:
  void set(const std::string& country, Sex sex, int period_start, double e0);
  bool has(const std::string& country, Sex sex, int period_start) const;
  double at(const std::string& country, Sex sex, int period_start) const;
  std::vector<std::string> countries() const;
  std::vector<int> period_starts(const std::string& country, Sex sex) const;
  // (period_start, e0) ascending by period.
  std::vector<std::pair<int, double>> series(const std::string& country, Sex sex) const;

 private:
  std::map<std::string, std::array<std::map<int, double>, 2>> data_;
};

// Expands the nine core fractions onto a full age grid: zero below 40, the
// 80-84 value carried to every group of 85 and older. Idempotent when fed
// a full-grid input back.
std::vector<double> harmonize_assaf_ages(const std::map<int, double>& raw, const AgeGrid& grid);

// Fractions re-indexed by (age, birth cohort), cohort = period label - age.
// Cells are absent exactly where the corresponding period is unobserved.
class AgeCohortMatrix {
 public:
  static AgeCohortMatrix build(const AssafSurface& surface, const std::string& country, Sex sex);

  const std::vector<int>& cohort_labels() const { return cohorts_; }
  std::optional<double> cell(int age_lower, int cohort) const;
  // Observed (age_lower, cohort, y) triples, row-major by age.
  std::vector<std::tuple<int, int, double>> observed_cells() const;
  // Inverse mapping back to period-indexed core vectors; only periods with
  // all nine cells present are returned complete.
  std::map<int, std::map<int, double>> to_period_cells() const;  // period_start -> age -> y

 private:
  std::vector<int> cohorts_;
  std::array<std::map<int, double>, kNumSafAges> rows_;  // cohort -> y per age row
};

// Loaders. With `issues == nullptr` the first problem is thrown as its
// typed error (the message lists every offending row of that kind);
// otherwise problems are appended to `issues`, offending rows are dropped,
// and a best-effort object is returned.
MortalitySurface load_mortality_surface(const std::string& path,
                                        const ColumnMap& schema = mortality_columns(),
                                        std::vector<LoadIssue>* issues = nullptr,
                                        char delim = ',');
AssafSurface load_assaf_surface(const std::string& path, const ColumnMap& schema = assaf_columns(),
                                std::vector<LoadIssue>* issues = nullptr, char delim = ',');
E0Series load_e0_series(const std::string& path, const ColumnMap& schema = e0_columns(),
                        std::vector<LoadIssue>* issues = nullptr, char delim = ',',
                        double e0_min = 20.0, double e0_max = 100.0);

void save_mortality_surface(const MortalitySurface& s, const std::string& path);
void save_assaf_surface(const AssafSurface& s, const std::string& path);
void save_e0_series(const E0Series& s, const std::string& path);

}  // namespace smokecast
