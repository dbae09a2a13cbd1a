#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "smokecast/common.hpp"
#include "smokecast/rng.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(NonFiniteTarget);
SMOKECAST_DEFINE_ERROR(CountExceedsDraws);
SMOKECAST_DEFINE_ERROR(BadChainConfig);

struct ChainConfig {
  long n_iterations = 10000;
  long burn_in = 1000;
  long thin = 10;
  int n_chains = 1;
  std::uint64_t seed = 1;
  long adaptation_window = 50;

  // Run settings used for the two production fits.
  static ChainConfig assaf_defaults();  // 3 chains x 100000, thin 20, burn-in 2000
  static ChainConfig e0ns_defaults();   // 1 chain x 100000, thin 50, burn-in 1000
  // Small settings for tests and synthetic pipelines.
  static ChainConfig desk(std::uint64_t seed, long n_iterations = 10000, long burn_in = 1000,
                          long thin = 10, int n_chains = 1);

  long retained_per_chain() const { return (n_iterations - burn_in) / thin; }
  long retained_total() const { return retained_per_chain() * n_chains; }
  void validate() const;
};

// Retained samples for one model: row-major (retained draw x parameter).
struct PosteriorDraws {
  std::vector<std::string> names;
  std::size_t n_rows = 0;
  std::vector<double> values;  // n_rows * names.size()
  ChainConfig config;
  std::vector<std::pair<std::string, double>> acceptance;  // per MH block

  std::size_t n_cols() const { return names.size(); }
  double at(std::size_t row, std::size_t col) const { return values[row * names.size() + col]; }
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;

  void save_csv(const std::string& path) const;
  void save_binary(const std::string& path) const;
  static PosteriorDraws load_csv(const std::string& path);
  static PosteriorDraws load_binary(const std::string& path);
  static PosteriorDraws load(const std::string& path);  // sniffs the format
};

// --- Conjugate updates ------------------------------------------------

// Normal mean with known observation noise. Observations enter through
// weighted_sum = sum(y_i / s2_i) and total_precision = sum(1 / s2_i); with
// no data this returns a prior draw.
double sample_normal_mean(Rng& rng, double prior_mean, double prior_var, double weighted_sum,
                          double total_precision);

// Inverse-gamma variance: prior IG(shape, scale), n residuals with sum of
// squares ss. n == 0 falls back to a prior draw.
double sample_inv_gamma_variance(Rng& rng, double prior_shape, double prior_scale, double n,
                                 double ss);

// --- Adaptive Metropolis block -----------------------------------------

struct ParamBounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

// Reflects a proposal into [lo, hi]; symmetric, so plain Metropolis accept.
double reflect_into(double x, const ParamBounds& b);

// Joint Gaussian random-walk Metropolis update with per-coordinate scales.
// Scales adapt toward the target acceptance band only while `adapting` is
// passed (i.e. during burn-in); afterwards the kernel is frozen.
class AdaptiveMhBlock {
 public:
  AdaptiveMhBlock(std::vector<double> scales, std::vector<ParamBounds> bounds,
                  long adaptation_window = 50);

  using LogTarget = std::function<double(std::span<const double>)>;

  bool step(std::vector<double>& x, const LogTarget& log_target, Rng& rng, bool adapting);

  double acceptance_rate() const {
    return total_ ? static_cast<double>(accepted_) / static_cast<double>(total_) : 0.0;
  }
  const std::vector<double>& scales() const { return scales_; }

 private:
  std::vector<double> scales_;
  std::vector<ParamBounds> bounds_;
  long adaptation_window_;
  long window_total_ = 0;
  long window_accepted_ = 0;
  long total_ = 0;
  long accepted_ = 0;
  double cached_log_target_ = std::numeric_limits<double>::quiet_NaN();
  bool cache_valid_ = false;

 public:
  // The cached target value is invalidated whenever conditioning state
  // changes between calls.
  void invalidate_cache() { cache_valid_ = false; }
};

// --- Generic Metropolis-within-Gibbs driver ----------------------------

// One named update in a Gibbs sweep. `update` returns whether an MH
// proposal was accepted (conjugate updates return true).
struct GibbsBlock {
  std::string name;
  std::function<bool(Rng&, bool adapting)> update;
  bool track_acceptance = false;
};

// A fully-wired single chain: its blocks close over private state, and
// `extract` serializes the current parameter vector.
struct ChainProgram {
  std::vector<GibbsBlock> blocks;
  std::function<void(std::vector<double>&)> extract;
};

// Builds a fresh chain (state initialized with `init_rng`).
using ChainFactory = std::function<ChainProgram(int chain_index, Rng init_rng)>;

// Runs n_chains independent chains (in parallel when enabled), concatenates
// retained rows in chain order. Deterministic for a fixed config.
PosteriorDraws run_chain(const std::vector<std::string>& parameter_names,
                         const ChainFactory& factory, const ChainConfig& config,
                         bool parallel = true);

}  // namespace smokecast
