#pragma once

#include <span>
#include <string>
#include <vector>

#include "smokecast/common.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(ChainTooShort);

struct RafteryLewisParams {
  double q = 0.025;  // quantile of interest
  double r = 0.0125; // tolerated error on the quantile's CDF value
  double s = 0.95;   // probability of achieving that accuracy
  double eps = 0.001;
};

struct RafteryLewisResult {
  long burn_in = 0;            // M
  long required_n = 0;         // N
  long n_min = 0;              // iid requirement for (q, r, s)
  double dependence_factor = 0.0;  // I = (M + N) / n_min
  long thin_k = 1;             // spacing at which the indicator chain is first-order Markov
};

// Run-length diagnostic for estimating one quantile from a chain:
// dichotomize at the empirical q-quantile, find the smallest thinning at
// which the indicator chain passes a BIC first- vs second-order Markov
// comparison, then size burn-in and run length from the fitted two-state
// transition probabilities. Throws ChainTooShort when the chain cannot even
// meet the iid pilot requirement.
RafteryLewisResult raftery_lewis(std::span<const double> chain,
                                 const RafteryLewisParams& params = {});

// Formats results for several named parameters in the two-sided layout
// (q and 1-q) used by the diagnostics subcommand.
std::string raftery_lewis_table(const std::vector<std::string>& names,
                                const std::vector<std::vector<double>>& chains,
                                const RafteryLewisParams& params = {});

}  // namespace smokecast
