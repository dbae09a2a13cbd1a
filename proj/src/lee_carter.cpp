#include "smokecast/lee_carter.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "smokecast/life_table.hpp"
#include "smokecast/parallel.hpp"
#include "smokecast/rng.hpp"

namespace smokecast {

namespace {
constexpr double kRateFloor = 1e-6;
}

std::vector<double> LeeCarterParams::rates_at(double k_value) const {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::exp(a[i] + b[i] * k_value);
  return out;
}

LeeCarterParams lee_carter_fit(const AgeGrid& grid,
                               const std::vector<std::vector<double>>& rates_by_period) {
  const std::size_t n_ages = grid.size();
  const std::size_t n_periods = rates_by_period.size();
  if (n_periods < 5) throw Error("Lee-Carter fit needs at least 5 periods");

  LeeCarterParams p;
  Eigen::MatrixXd logm(n_ages, n_periods);
  for (std::size_t t = 0; t < n_periods; ++t) {
    if (rates_by_period[t].size() != n_ages)
      throw ShapeMismatch("period " + std::to_string(t) + " does not cover the age grid");
    for (std::size_t x = 0; x < n_ages; ++x) {
      double m = rates_by_period[t][x];
      if (m < kRateFloor) {
        m = kRateFloor;
        ++p.floored_zero_rates;
      }
      logm(x, t) = std::log(m);
    }
  }

  p.a.resize(n_ages);
  for (std::size_t x = 0; x < n_ages; ++x) {
    p.a[x] = logm.row(x).mean();
    logm.row(x).array() -= p.a[x];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(logm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double s1 = svd.singularValues()(0);
  if (s1 < 1e-9 * std::max(1.0, logm.norm()) || s1 < 1e-12)
    throw RankDeficient("centered log-rate matrix is (numerically) constant over time");

  Eigen::VectorXd u = svd.matrixU().col(0);
  Eigen::VectorXd v = svd.matrixV().col(0);
  const double usum = u.sum();
  if (std::abs(usum) < 1e-10)
    throw RankDeficient("leading age response sums to zero; normalization undefined");

  p.b.resize(n_ages);
  for (std::size_t x = 0; x < n_ages; ++x) p.b[x] = u(x) / usum;
  p.k.resize(n_periods);
  for (std::size_t t = 0; t < n_periods; ++t) p.k[t] = s1 * v(t) * usum;

  double rss = 0.0;
  for (std::size_t x = 0; x < n_ages; ++x)
    for (std::size_t t = 0; t < n_periods; ++t) {
      const double r = logm(x, t) - p.b[x] * p.k[t];
      rss += r * r;
    }
  p.reconstruction_rmse = std::sqrt(rss / static_cast<double>(n_ages * n_periods));
  return p;
}

std::map<std::string, LeeCarterParams> lee_carter_fit_panel(
    const AgeGrid& grid,
    const std::map<std::string, std::vector<std::vector<double>>>& rates_by_country,
    Coherence coherence) {
  std::map<std::string, LeeCarterParams> fits;
  for (const auto& [country, rates] : rates_by_country)
    fits[country] = lee_carter_fit(grid, rates);
  if (coherence == Coherence::none || fits.size() < 2) return fits;

  const std::size_t n_ages = grid.size();
  std::vector<double> shared_b(n_ages, 0.0);
  for (const auto& [country, fit] : fits)
    for (std::size_t x = 0; x < n_ages; ++x) shared_b[x] += fit.b[x];
  double bsum = 0.0;
  for (double v : shared_b) bsum += v;
  if (std::abs(bsum) < 1e-10) throw RankDeficient("shared age response sums to zero");
  for (double& v : shared_b) v /= bsum;

  double b2 = 0.0;
  for (double v : shared_b) b2 += v * v;
  for (auto& [country, fit] : fits) {
    const auto& rates = rates_by_country.at(country);
    fit.b = shared_b;
    for (std::size_t t = 0; t < rates.size(); ++t) {
      double proj = 0.0;
      for (std::size_t x = 0; x < n_ages; ++x) {
        const double lm = std::log(std::max(rates[t][x], kRateFloor));
        proj += shared_b[x] * (lm - fit.a[x]);
      }
      fit.k[t] = proj / b2;
    }
    // Recenter so sum(k) = 0, folding the shift into a_x.
    double kmean = 0.0;
    for (double kv : fit.k) kmean += kv;
    kmean /= static_cast<double>(fit.k.size());
    for (double& kv : fit.k) kv -= kmean;
    for (std::size_t x = 0; x < n_ages; ++x) fit.a[x] += shared_b[x] * kmean;
  }
  return fits;
}

std::vector<double> rates_for_target_e0(const AgeGrid& grid, const LeeCarterParams& params,
                                        double target_e0) {
  constexpr double kMax = 200.0;
  constexpr double kTol = 1e-6;
  const auto f = [&](double k) { return life_table_e0(grid, params.rates_at(k)) - target_e0; };

  double lo = -20.0, hi = 20.0;
  double flo = f(lo), fhi = f(hi);
  while (flo * fhi > 0.0 && (lo > -kMax || hi < kMax)) {
    lo = std::max(-kMax, lo * 2.0);
    hi = std::min(kMax, hi * 2.0);
    flo = f(lo);
    fhi = f(hi);
  }
  if (flo * fhi > 0.0)
    throw BracketFailure("target e0 " + std::to_string(target_e0) +
                         " unreachable for k in [-200, 200]");
  if (std::abs(flo) < kTol) return params.rates_at(lo);
  if (std::abs(fhi) < kTol) return params.rates_at(hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (std::abs(fmid) < kTol) return params.rates_at(mid);
    if (flo * fmid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  throw BracketFailure("bisection failed to reach 1e-6 years for target " +
                       std::to_string(target_e0));
}

LeeCarterForecast lee_carter_baseline_forecast(const AgeGrid& grid,
                                               const std::vector<std::vector<double>>& history,
                                               int horizon, std::size_t n_draws,
                                               std::uint64_t seed) {
  const LeeCarterParams fit = lee_carter_fit(grid, history);
  const std::size_t T = fit.k.size();
  const double drift = (fit.k[T - 1] - fit.k[0]) / static_cast<double>(T - 1);
  double ss = 0.0;
  for (std::size_t t = 1; t < T; ++t) {
    const double inc = fit.k[t] - fit.k[t - 1] - drift;
    ss += inc * inc;
  }
  const double sd = T > 2 ? std::sqrt(ss / static_cast<double>(T - 2)) : 0.0;

  LeeCarterForecast out;
  out.n_draws = n_draws;
  out.e0_draws.resize(n_draws * static_cast<std::size_t>(horizon));
  const Rng root(seed);
  for (std::size_t d = 0; d < n_draws; ++d) {
    Rng rng = root.derive(d);
    double k = fit.k[T - 1];
    for (int h = 0; h < horizon; ++h) {
      k += drift + sd * rng.normal();
      out.e0_draws[d * horizon + h] = life_table_e0(grid, fit.rates_at(k));
    }
  }
  return out;
}

}  // namespace smokecast
