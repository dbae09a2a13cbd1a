#include "smokecast/spline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "smokecast/csv.hpp"
#include "smokecast/stats.hpp"

namespace smokecast {

namespace {
double cube_pos(double t) { return t > 0.0 ? t * t * t : 0.0; }
}  // namespace

double RegressionSpline::eval(double x) const {
  double v = coef[0] + coef[1] * x + coef[2] * x * x + coef[3] * x * x * x;
  for (std::size_t j = 0; j < knots.size(); ++j) v += coef[4 + j] * cube_pos(x - knots[j]);
  return v;
}

RegressionSpline fit_cubic_spline(std::span<const double> x, std::span<const double> y,
                                  int n_knots) {
  const std::size_t n = x.size();
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());

  RegressionSpline s;
  s.x_min = sorted.front();
  s.x_max = sorted.back();
  for (int j = 1; j <= n_knots; ++j)
    s.knots.push_back(quantile_type7(sorted, static_cast<double>(j) / (n_knots + 1)));
  // Merge coincident knots (heavily tied data) to keep the basis full rank.
  s.knots.erase(std::unique(s.knots.begin(), s.knots.end()), s.knots.end());

  const std::size_t p = 4 + s.knots.size();
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = x[i];
    X(i, 2) = x[i] * x[i];
    X(i, 3) = x[i] * x[i] * x[i];
    for (std::size_t j = 0; j < s.knots.size(); ++j) X(i, 4 + j) = cube_pos(x[i] - s.knots[j]);
    Y(i) = y[i];
  }
  Eigen::VectorXd beta = X.colPivHouseholderQr().solve(Y);
  s.coef.assign(beta.data(), beta.data() + p);
  return s;
}

double VarianceSpline::operator()(double e) const {
  const double clamped = std::clamp(e, clamp_lo, clamp_hi);
  return std::max(floor, spline.eval(clamped));
}

VarianceSpline fit_variance_spline(std::span<const double> e0ns,
                                   std::span<const double> abs_residual, int n_knots) {
  if (e0ns.size() != abs_residual.size())
    throw Error("variance spline: predictor/residual length mismatch");
  if (e0ns.size() < 20)
    throw InsufficientSpread("need at least 20 residual pairs, got " +
                             std::to_string(e0ns.size()));
  const auto [lo, hi] = std::minmax_element(e0ns.begin(), e0ns.end());
  if (*hi - *lo <= 10.0)
    throw InsufficientSpread("predictor range " + format_double(*hi - *lo) +
                             " years is too narrow (need > 10)");
  VarianceSpline v;
  v.spline = fit_cubic_spline(e0ns, abs_residual, n_knots);
  v.clamp_lo = *lo;
  v.clamp_hi = *hi;
  return v;
}

VarianceSpline VarianceSpline::constant(double value) {
  VarianceSpline v;
  v.spline.coef = {value, 0.0, 0.0, 0.0};
  v.spline.x_min = 0.0;
  v.spline.x_max = 1.0;
  v.clamp_lo = 0.0;
  v.clamp_hi = 1.0;
  v.floor = std::min(0.01, value);
  return v;
}

void VarianceSpline::save_csv(const std::string& path) const {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"clamp_lo", format_double(clamp_lo)});
  rows.push_back({"clamp_hi", format_double(clamp_hi)});
  rows.push_back({"floor", format_double(floor)});
  rows.push_back({"x_min", format_double(spline.x_min)});
  rows.push_back({"x_max", format_double(spline.x_max)});
  for (std::size_t i = 0; i < spline.knots.size(); ++i)
    rows.push_back({"knot" + std::to_string(i), format_double(spline.knots[i])});
  for (std::size_t i = 0; i < spline.coef.size(); ++i)
    rows.push_back({"coef" + std::to_string(i), format_double(spline.coef[i])});
  write_delimited(path, {"field", "value"}, rows);
}

VarianceSpline VarianceSpline::load_csv(const std::string& path) {
  const CsvTable t = read_delimited(path);
  VarianceSpline v;
  std::vector<std::pair<int, double>> knots, coefs;
  for (const auto& row : t.rows) {
    if (row.size() < 2) throw ParseError(path + ": ragged row");
    const std::string& key = row[0];
    const double val = parse_double(row[1]).value_or(0.0);
    if (key == "clamp_lo") v.clamp_lo = val;
    else if (key == "clamp_hi") v.clamp_hi = val;
    else if (key == "floor") v.floor = val;
    else if (key == "x_min") v.spline.x_min = val;
    else if (key == "x_max") v.spline.x_max = val;
    else if (key.rfind("knot", 0) == 0) knots.emplace_back(std::stoi(key.substr(4)), val);
    else if (key.rfind("coef", 0) == 0) coefs.emplace_back(std::stoi(key.substr(4)), val);
  }
  std::sort(knots.begin(), knots.end());
  std::sort(coefs.begin(), coefs.end());
  for (auto& [i, val] : knots) v.spline.knots.push_back(val);
  for (auto& [i, val] : coefs) v.spline.coef.push_back(val);
  return v;
}

}  // namespace smokecast
