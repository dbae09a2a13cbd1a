#include "smokecast/life_table.hpp"

#include <algorithm>
#include <cmath>

namespace smokecast {

std::vector<double> default_ax(const AgeGrid& grid, std::span<const double> m) {
  const std::size_t n = grid.size();
  std::vector<double> a(n);
  for (std::size_t i = 0; i + 1 < n; ++i) a[i] = 0.5 * grid[i].width;
  a[n - 1] = 0.0;  // open group handled separately (L = l/m)
  const bool infant_start = n >= 2 && grid[0].lower == 0 && grid[0].width == 1 &&
                            grid[1].lower == 1 && grid[1].width == 4;
  if (infant_start) {
    const double m0 = m[0];
    if (m0 >= 0.107) {
      a[0] = 0.340;
      a[1] = 1.3565;
    } else {
      a[0] = 0.049 + 2.742 * m0;
      a[1] = 1.5865 - 2.167 * m0;
    }
  }
  return a;
}

LifeTable make_life_table(const AgeGrid& grid, std::span<const double> m) {
  const std::size_t n = grid.size();
  if (m.size() != n) throw ShapeMismatch("rate vector does not match the age grid");
  for (double v : m)
    if (!std::isfinite(v) || v < 0.0) throw NonFiniteRate("rate " + std::to_string(v));
  if (m[n - 1] <= 0.0) throw OpenGroupZeroRate("open age group rate must be > 0");

  LifeTable t;
  t.m.assign(m.begin(), m.end());
  t.a = default_ax(grid, m);
  t.q.resize(n);
  t.l.resize(n);
  t.L.resize(n);
  t.T.resize(n);
  t.e.resize(n);

  t.l[0] = kLifeTableRadix;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double w = grid[i].width;
    const double q = std::min(1.0, w * m[i] / (1.0 + (w - t.a[i]) * m[i]));
    t.q[i] = q;
    const double d = t.l[i] * q;
    t.l[i + 1] = t.l[i] - d;
    t.L[i] = w * t.l[i + 1] + t.a[i] * d;
  }
  t.q[n - 1] = 1.0;
  t.L[n - 1] = t.l[n - 1] / m[n - 1];
  t.a[n - 1] = t.l[n - 1] > 0.0 ? t.L[n - 1] / t.l[n - 1] : 0.0;

  double cum = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    cum += t.L[i];
    t.T[i] = cum;
    t.e[i] = t.l[i] > 0.0 ? t.T[i] / t.l[i] : 0.0;
  }
  return t;
}

double life_table_e0(const AgeGrid& grid, std::span<const double> m) {
  return make_life_table(grid, m).e0();
}

std::vector<double> nonsmoking_rates(std::span<const double> d, std::span<const double> y) {
  if (d.size() != y.size()) throw ShapeMismatch("rate and fraction vectors differ in length");
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = (1.0 - y[i]) * d[i];
  return out;
}

std::vector<double> allcause_from_nonsmoking(std::span<const double> dns,
                                             std::span<const double> y) {
  if (dns.size() != y.size()) throw ShapeMismatch("rate and fraction vectors differ in length");
  std::vector<double> out(dns.size());
  for (std::size_t i = 0; i < dns.size(); ++i) {
    if (y[i] >= 1.0)
      throw AttributionAtUnity("fraction " + std::to_string(y[i]) + " at index " +
                               std::to_string(i));
    out[i] = dns[i] / (1.0 - y[i]);
  }
  return out;
}

double asaf_from_assaf(std::span<const double> y, std::span<const double> m) {
  if (y.size() != m.size()) throw ShapeMismatch("fraction and rate vectors differ in length");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += y[i] * m[i];
    den += m[i];
  }
  if (den <= 0.0) throw ZeroTotalMortality("total mortality weight is zero");
  return num / den;
}

std::vector<std::pair<int, double>> e0ns_series(const MortalitySurface& mort,
                                                const AssafSurface& assaf,
                                                const std::string& country, Sex sex) {
  std::vector<std::pair<int, double>> out;
  for (int p : mort.period_starts(country, sex)) {
    if (!assaf.has(country, sex, p)) continue;
    const auto d = mort.rates(country, sex, p);
    const auto y = assaf.full(country, sex, p, mort.grid());
    out.emplace_back(p, life_table_e0(mort.grid(), nonsmoking_rates(d, y)));
  }
  return out;
}

}  // namespace smokecast
