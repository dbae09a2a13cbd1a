#include "smokecast/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>

#include "smokecast/csv.hpp"
#include "smokecast/parallel.hpp"
#include "smokecast/stats.hpp"

namespace smokecast {

ChainConfig ChainConfig::assaf_defaults() {
  ChainConfig c;
  c.n_iterations = 100000;
  c.burn_in = 2000;
  c.thin = 20;
  c.n_chains = 3;
  return c;
}

ChainConfig ChainConfig::e0ns_defaults() {
  ChainConfig c;
  c.n_iterations = 100000;
  c.burn_in = 1000;
  c.thin = 50;
  c.n_chains = 1;
  return c;
}

ChainConfig ChainConfig::desk(std::uint64_t seed, long n_iterations, long burn_in, long thin,
                              int n_chains) {
  ChainConfig c;
  c.n_iterations = n_iterations;
  c.burn_in = burn_in;
  c.thin = thin;
  c.n_chains = n_chains;
  c.seed = seed;
  return c;
}

void ChainConfig::validate() const {
  if (thin < 1) throw BadChainConfig("thin must be >= 1");
  if (burn_in >= n_iterations) throw BadChainConfig("burn_in must be < n_iterations");
  if (n_chains < 1) throw BadChainConfig("n_chains must be >= 1");
  if (adaptation_window < 1) throw BadChainConfig("adaptation_window must be >= 1");
}

std::size_t PosteriorDraws::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw Error("no parameter named '" + name + "' in draws");
}

std::vector<double> PosteriorDraws::column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) out[r] = at(r, c);
  return out;
}

void PosteriorDraws::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path);
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < names.size(); ++c)
      out << (c ? "," : "") << format_double(at(r, c));
    out << '\n';
  }
}

namespace {
constexpr char kDrawsMagic[8] = {'S', 'M', 'K', 'D', 'R', 'W', '0', '1'};

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}
void put_string(std::ofstream& out, const std::string& s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}
std::string get_string(std::ifstream& in) {
  const auto n = get<std::uint32_t>(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  return s;
}
}  // namespace

void PosteriorDraws::save_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out.write(kDrawsMagic, sizeof(kDrawsMagic));
  put<std::uint64_t>(out, names.size());
  put<std::uint64_t>(out, n_rows);
  put<std::int64_t>(out, config.n_iterations);
  put<std::int64_t>(out, config.burn_in);
  put<std::int64_t>(out, config.thin);
  put<std::int32_t>(out, config.n_chains);
  put<std::uint64_t>(out, config.seed);
  put<std::int64_t>(out, config.adaptation_window);
  for (const auto& n : names) put_string(out, n);
  put<std::uint64_t>(out, acceptance.size());
  for (const auto& [name, rate] : acceptance) {
    put_string(out, name);
    put<double>(out, rate);
  }
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw FileError("write failure on " + path);
}

PosteriorDraws PosteriorDraws::load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (std::memcmp(magic, kDrawsMagic, sizeof(magic)) != 0)
    throw ParseError(path + " is not a draws file");
  PosteriorDraws d;
  const auto n_names = get<std::uint64_t>(in);
  d.n_rows = get<std::uint64_t>(in);
  d.config.n_iterations = get<std::int64_t>(in);
  d.config.burn_in = get<std::int64_t>(in);
  d.config.thin = get<std::int64_t>(in);
  d.config.n_chains = get<std::int32_t>(in);
  d.config.seed = get<std::uint64_t>(in);
  d.config.adaptation_window = get<std::int64_t>(in);
  d.names.reserve(n_names);
  for (std::uint64_t i = 0; i < n_names; ++i) d.names.push_back(get_string(in));
  const auto n_acc = get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < n_acc; ++i) {
    std::string name = get_string(in);
    const double rate = get<double>(in);
    d.acceptance.emplace_back(std::move(name), rate);
  }
  d.values.resize(d.n_rows * n_names);
  in.read(reinterpret_cast<char*>(d.values.data()),
          static_cast<std::streamsize>(d.values.size() * sizeof(double)));
  if (!in) throw ParseError(path + " truncated");
  return d;
}

PosteriorDraws PosteriorDraws::load_csv(const std::string& path) {
  const CsvTable table = read_delimited(path);
  PosteriorDraws d;
  d.names = table.header;
  d.n_rows = table.rows.size();
  d.values.reserve(d.n_rows * d.names.size());
  for (const auto& row : table.rows) {
    if (row.size() != d.names.size()) throw ParseError(path + ": ragged row");
    for (const auto& f : row) {
      const auto v = parse_double(f);
      if (!v) throw ParseError(path + ": non-numeric cell '" + f + "'");
      d.values.push_back(*v);
    }
  }
  return d;
}

PosteriorDraws PosteriorDraws::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  char magic[8] = {};
  in.read(magic, sizeof(magic));
  in.close();
  if (std::memcmp(magic, kDrawsMagic, sizeof(magic)) == 0) return load_binary(path);
  return load_csv(path);
}

double sample_normal_mean(Rng& rng, double prior_mean, double prior_var, double weighted_sum,
                          double total_precision) {
  const double post_prec = 1.0 / prior_var + total_precision;
  const double post_mean = (prior_mean / prior_var + weighted_sum) / post_prec;
  return rng.normal(post_mean, std::sqrt(1.0 / post_prec));
}

double sample_inv_gamma_variance(Rng& rng, double prior_shape, double prior_scale, double n,
                                 double ss) {
  return sample_inv_gamma(rng, prior_shape + 0.5 * n, prior_scale + 0.5 * ss);
}

double reflect_into(double x, const ParamBounds& b) {
  if (x >= b.lo && x <= b.hi) return x;
  const bool lo_finite = std::isfinite(b.lo);
  const bool hi_finite = std::isfinite(b.hi);
  if (lo_finite && hi_finite) {
    const double width = b.hi - b.lo;
    double t = std::fmod(x - b.lo, 2.0 * width);
    if (t < 0.0) t += 2.0 * width;
    return b.lo + (t <= width ? t : 2.0 * width - t);
  }
  if (lo_finite && x < b.lo) return 2.0 * b.lo - x;
  if (hi_finite && x > b.hi) return 2.0 * b.hi - x;
  return x;
}

AdaptiveMhBlock::AdaptiveMhBlock(std::vector<double> scales, std::vector<ParamBounds> bounds,
                                 long adaptation_window)
    : scales_(std::move(scales)), bounds_(std::move(bounds)),
      adaptation_window_(adaptation_window) {
  if (scales_.size() != bounds_.size()) throw Error("MH block: scales/bounds size mismatch");
}

bool AdaptiveMhBlock::step(std::vector<double>& x, const LogTarget& log_target, Rng& rng,
                           bool adapting) {
  if (!cache_valid_) {
    cached_log_target_ = log_target(x);
    cache_valid_ = true;
  }
  if (!std::isfinite(cached_log_target_))
    throw NonFiniteTarget("log target not finite at the current point");

  std::vector<double> proposal(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    proposal[i] = reflect_into(x[i] + scales_[i] * rng.normal(), bounds_[i]);

  const double lp = log_target(proposal);
  const double log_alpha = lp - cached_log_target_;
  bool accept = false;
  if (log_alpha >= 0.0) {
    accept = true;
  } else {
    double u = rng.uniform01();
    while (u <= 0.0) u = rng.uniform01();
    accept = std::log(u) < log_alpha;
  }
  if (accept && std::isfinite(lp)) {
    x = std::move(proposal);
    cached_log_target_ = lp;
  } else {
    accept = false;
  }

  ++total_;
  ++window_total_;
  if (accept) {
    ++accepted_;
    ++window_accepted_;
  }
  if (adapting && window_total_ >= adaptation_window_) {
    const double rate =
        static_cast<double>(window_accepted_) / static_cast<double>(window_total_);
    if (rate < 0.2)
      for (auto& s : scales_) s *= 0.8;
    else if (rate > 0.4)
      for (auto& s : scales_) s *= 1.25;
    window_total_ = 0;
    window_accepted_ = 0;
  }
  return accept;
}

PosteriorDraws run_chain(const std::vector<std::string>& parameter_names,
                         const ChainFactory& factory, const ChainConfig& config, bool parallel) {
  config.validate();
  const long per_chain = config.retained_per_chain();
  const std::size_t n_cols = parameter_names.size();

  PosteriorDraws out;
  out.names = parameter_names;
  out.config = config;
  out.n_rows = static_cast<std::size_t>(per_chain) * config.n_chains;
  out.values.assign(out.n_rows * n_cols, 0.0);

  const Rng root(config.seed);
  std::vector<std::vector<std::pair<std::string, std::pair<long, long>>>> chain_acc(
      config.n_chains);

  parallel_for(static_cast<std::size_t>(config.n_chains), parallel, [&](std::size_t ci) {
    Rng init_rng = root.derive(0x10000 + ci);
    Rng rng = root.derive(0x20000 + ci);
    ChainProgram program = factory(static_cast<int>(ci), init_rng);

    std::map<std::string, std::pair<long, long>> acc;  // accepted, total
    std::vector<double> row(n_cols);
    for (long iter = 1; iter <= config.n_iterations; ++iter) {
      const bool adapting = iter <= config.burn_in;
      for (auto& block : program.blocks) {
        const bool accepted = block.update(rng, adapting);
        if (block.track_acceptance && !adapting) {
          auto& a = acc[block.name];
          a.first += accepted ? 1 : 0;
          a.second += 1;
        }
      }
      if (iter > config.burn_in && (iter - config.burn_in) % config.thin == 0) {
        program.extract(row);
        const long retained = (iter - config.burn_in) / config.thin - 1;
        const std::size_t r = static_cast<std::size_t>(ci) * per_chain + retained;
        std::copy(row.begin(), row.end(), out.values.begin() + r * n_cols);
      }
    }
    for (auto& [name, a] : acc) chain_acc[ci].emplace_back(name, a);
  });

  std::map<std::string, std::pair<long, long>> merged;
  for (const auto& per_chain_acc : chain_acc)
    for (const auto& [name, a] : per_chain_acc) {
      merged[name].first += a.first;
      merged[name].second += a.second;
    }
  for (const auto& [name, a] : merged)
    out.acceptance.emplace_back(
        name, a.second ? static_cast<double>(a.first) / static_cast<double>(a.second) : 0.0);

  for (double v : out.values)
    if (!std::isfinite(v)) throw NonFiniteTarget("non-finite retained draw");
  return out;
}

}  // namespace smokecast
