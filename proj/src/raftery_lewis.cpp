#include "smokecast/raftery_lewis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "smokecast/stats.hpp"

namespace smokecast {

namespace {

// G2 statistic for first- vs second-order Markov on a binary chain thinned
// at stride k, penalized into a BIC; negative means first-order suffices.
double markov_bic(const std::vector<int>& z) {
  double counts[2][2][2] = {};
  const std::size_t n = z.size();
  if (n < 3) return -1.0;
  for (std::size_t t = 2; t < n; ++t) counts[z[t - 2]][z[t - 1]][z[t]] += 1.0;

  double g2 = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) {
        const double nij = counts[i][j][0] + counts[i][j][1];
        const double njl = counts[0][j][l] + counts[1][j][l];
        const double nj = counts[0][j][0] + counts[0][j][1] + counts[1][j][0] + counts[1][j][1];
        if (counts[i][j][l] > 0.0 && nij > 0.0 && njl > 0.0 && nj > 0.0) {
          const double fitted = nij * njl / nj;
          g2 += 2.0 * counts[i][j][l] * std::log(counts[i][j][l] / fitted);
        }
      }
  const double m = static_cast<double>(n - 2);
  return g2 - 2.0 * std::log(m);
}

}  // namespace

RafteryLewisResult raftery_lewis(std::span<const double> chain, const RafteryLewisParams& p) {
  const double zcrit = norm_quantile(0.5 * (p.s + 1.0));
  const double n_min_d = zcrit * zcrit * p.q * (1.0 - p.q) / (p.r * p.r);
  RafteryLewisResult res;
  res.n_min = static_cast<long>(std::ceil(n_min_d));
  if (static_cast<long>(chain.size()) < res.n_min)
    throw ChainTooShort("chain length " + std::to_string(chain.size()) +
                        " below the pilot requirement of " + std::to_string(res.n_min));

  std::vector<double> sorted(chain.begin(), chain.end());
  std::sort(sorted.begin(), sorted.end());
  const double cutoff = quantile_type7(sorted, p.q);

  std::vector<int> indicator(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) indicator[i] = chain[i] <= cutoff ? 1 : 0;

  long k = 1;
  std::vector<int> thinned;
  for (;; ++k) {
    thinned.clear();
    for (std::size_t i = 0; i < indicator.size(); i += k) thinned.push_back(indicator[i]);
    if (thinned.size() < 8) {
      // Cannot thin further; accept the current spacing.
      break;
    }
    if (markov_bic(thinned) <= 0.0) break;
  }
  res.thin_k = k;

  double n01 = 0, n0 = 0, n10 = 0, n1 = 0;
  for (std::size_t t = 1; t < thinned.size(); ++t) {
    if (thinned[t - 1] == 0) {
      n0 += 1;
      if (thinned[t] == 1) n01 += 1;
    } else {
      n1 += 1;
      if (thinned[t] == 0) n10 += 1;
    }
  }
  if (n0 == 0 || n1 == 0)
    throw ChainTooShort("indicator chain has no transitions at spacing " + std::to_string(k));
  double alpha = n01 / n0;
  double beta = n10 / n1;
  alpha = std::clamp(alpha, 1e-12, 1.0 - 1e-12);
  beta = std::clamp(beta, 1e-12, 1.0 - 1e-12);

  const double lambda = 1.0 - alpha - beta;
  const double pi_max = std::max(alpha, beta) / (alpha + beta);
  double m_star = 1.0;
  if (std::abs(lambda) > 1e-12 && std::abs(lambda) < 1.0)
    m_star = std::log(p.eps * (alpha + beta) / pi_max) / std::log(std::abs(lambda));
  res.burn_in = static_cast<long>(std::ceil(std::max(m_star, 0.0))) * k;

  const double apb = alpha + beta;
  const double n_star = alpha * beta * (2.0 - apb) / (apb * apb * apb) * (zcrit / p.r) *
                        (zcrit / p.r);
  res.required_n = static_cast<long>(std::ceil(n_star)) * k;
  res.dependence_factor =
      static_cast<double>(res.burn_in + res.required_n) / static_cast<double>(res.n_min);
  return res;
}

std::string raftery_lewis_table(const std::vector<std::string>& names,
                                const std::vector<std::vector<double>>& chains,
                                const RafteryLewisParams& params) {
  RafteryLewisParams upper = params;
  upper.q = 1.0 - params.q;
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-24s %6s %8s %6s %6s %8s %6s\n", "parameter", "burn1",
                "size1", "df1", "burn2", "size2", "df2");
  out << buf;
  for (std::size_t i = 0; i < names.size(); ++i) {
    try {
      const auto lo = raftery_lewis(chains[i], params);
      const auto hi = raftery_lewis(chains[i], upper);
      std::snprintf(buf, sizeof(buf), "%-24s %6ld %8ld %6.2f %6ld %8ld %6.2f\n",
                    names[i].c_str(), lo.burn_in, lo.required_n, lo.dependence_factor,
                    hi.burn_in, hi.required_n, hi.dependence_factor);
      out << buf;
    } catch (const ChainTooShort& e) {
      std::snprintf(buf, sizeof(buf), "%-24s %s\n", names[i].c_str(), e.what());
      out << buf;
    }
  }
  return out.str();
}

}  // namespace smokecast
