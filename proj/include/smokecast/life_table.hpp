#pragma once

#include <span>
#include <vector>

#include "smokecast/age_grid.hpp"
#include "smokecast/common.hpp"
#include "smokecast/data_model.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(OpenGroupZeroRate);
SMOKECAST_DEFINE_ERROR(NonFiniteRate);
SMOKECAST_DEFINE_ERROR(ShapeMismatch);
SMOKECAST_DEFINE_ERROR(AttributionAtUnity);
SMOKECAST_DEFINE_ERROR(ZeroTotalMortality);

// Fractions fed to the all-cause inversion are clamped to this ceiling so a
// stray draw at or above 1 cannot make the inversion singular.
inline constexpr double kAssafClampMax = 0.99;
inline constexpr double kLifeTableRadix = 100000.0;

// Abridged period life table. Columns follow the usual conventions:
// q_x = n m_x / (1 + (n - a_x) m_x) for closed groups, q = 1 and L = l/m for
// the open group.
struct LifeTable {
  std::vector<double> m, a, q, l, L, T, e;
  double e0() const { return e.front(); }
};

// a_x defaults: n/2 for closed groups, except that a grid starting with the
// [0,1) and [1,5) groups gets the usual infant adjustments, piecewise in
// m_0 (sex-independent constants; midpoints of the Coale-Demeny pair).
std::vector<double> default_ax(const AgeGrid& grid, std::span<const double> m);

LifeTable make_life_table(const AgeGrid& grid, std::span<const double> m);
double life_table_e0(const AgeGrid& grid, std::span<const double> m);

// Elementwise (1 - y) * d.
std::vector<double> nonsmoking_rates(std::span<const double> d, std::span<const double> y);
// Inverse of the above: dns / (1 - y). Throws AttributionAtUnity when a
// fraction >= 1 reaches it (callers clamp to kAssafClampMax first).
std::vector<double> allcause_from_nonsmoking(std::span<const double> dns,
                                             std::span<const double> y);

// Mortality-weighted all-age fraction: sum(y*m) / sum(m).
double asaf_from_assaf(std::span<const double> y, std::span<const double> m);

// Per-period non-smoking life expectancy for one country/sex, over the
// periods present in both surfaces.
std::vector<std::pair<int, double>> e0ns_series(const MortalitySurface& mort,
                                                const AssafSurface& assaf,
                                                const std::string& country, Sex sex);

}  // namespace smokecast
