#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ncg/game.hpp"
#include "ncg/graph.hpp"
#include "ncg/parallel.hpp"
#include "ncg/stats.hpp"

// Statistical experiments on the rounds-to-convergence distribution across
// graph sizes: per-size moments, logarithmic envelope constants, and tail
// estimates.

namespace ncg {

// Conservative theoretical lower bound on the probability that an unsatisfied
// vertex resolves within two rounds (q >= max degree + 2). Displayed for
// contrast with fitted rates; far too small to gate anything empirically.
inline const double k_two_round_resolve_bound = 1.0 / (1050.0 * std::exp(9.0));

enum class GraphFamily {
  fixed_p,          // G(n, p) with the same p at every size
  expected_degree,  // G(n, p) with p = d / (n - 1)
};

struct SweepConfig {
  std::vector<int> sizes;  // strictly increasing
  GraphFamily family = GraphFamily::expected_degree;
  double family_value = 6.0;  // p for fixed_p, mean degree d otherwise
  int q_fixed = 0;            // 0: q = max degree + 2 per instance
  int trials = 500;           // per size
  int trials_per_graph = 1;   // fresh graph every trials_per_graph trials
  uint64_t master_seed = 1;
  int max_rounds = 1'000'000;
  int threads = 0;  // 0: hardware concurrency
};

struct TrialSample {
  int n;
  int graph_id;
  int trial_id;  // within its graph
  int rounds;    // T
  uint64_t seed;
};

namespace detail {
// Stream-id tags keeping graph generation and trial play on disjoint streams.
inline constexpr uint64_t kTagSweepGraph = 0x67;
inline constexpr uint64_t kTagSweepTrial = 0x74;

inline double family_p(const SweepConfig& cfg, int n) {
  double p = cfg.family == GraphFamily::fixed_p
                 ? cfg.family_value
                 : (n > 1 ? cfg.family_value / static_cast<double>(n - 1) : 0.0);
  return std::clamp(p, 0.0, 1.0);
}
}  // namespace detail

inline void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.sizes.empty()) throw ValidationError("sweep needs at least one size");
  for (size_t i = 0; i + 1 < cfg.sizes.size(); ++i)
    if (cfg.sizes[i] >= cfg.sizes[i + 1])
      throw ValidationError("sweep sizes must be strictly increasing");
  if (cfg.sizes.front() < 1) throw ValidationError("sizes must be >= 1");
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  if (cfg.trials_per_graph < 1 || cfg.trials % cfg.trials_per_graph != 0)
    throw ValidationError("trials must be a multiple of trials_per_graph");
  if (cfg.family == GraphFamily::fixed_p &&
      (cfg.family_value < 0.0 || cfg.family_value > 1.0))
    throw ValidationError("fixed p must lie in [0, 1]");
  if (cfg.family == GraphFamily::expected_degree && cfg.family_value < 0.0)
    throw ValidationError("expected degree must be >= 0");
}

// Plays every (size, graph, trial) cell to convergence. Fully reproducible
// from the master seed; cells run concurrently and are folded back in fixed
// order. A timeout aborts the sweep with the offending seed in the message:
// with q >= max degree + 2 it signals a bug, not noise.
inline std::vector<TrialSample> run_sweep(const SweepConfig& cfg) {
  validate_sweep_config(cfg);
  std::vector<TrialSample> samples;
  for (int n : cfg.sizes) {
    const int graphs = cfg.trials / cfg.trials_per_graph;
    const double p = detail::family_p(cfg, n);
    std::vector<TrialSample> block(
        static_cast<size_t>(graphs) * cfg.trials_per_graph);
    detail::parallel_for(graphs, cfg.threads, [&](int64_t gi) {
      const uint64_t graph_seed =
          stream_key(cfg.master_seed, detail::kTagSweepGraph, n, gi);
      const Graph g = generate_er(n, p, graph_seed);
      const int q = cfg.q_fixed > 0 ? cfg.q_fixed : max_degree(g) + 2;
      check_palette(q, max_degree(g));
      for (int t = 0; t < cfg.trials_per_graph; ++t) {
        const uint64_t trial_seed =
            stream_key(cfg.master_seed, detail::kTagSweepTrial, n, gi, t);
        ConvergenceResult r =
            play_to_convergence(g, q, trial_seed, cfg.max_rounds);
        if (!r.converged)
          throw InternalError(
              "trial timed out after " + std::to_string(cfg.max_rounds) +
              " rounds (n=" + std::to_string(n) +
              ", seed=" + std::to_string(trial_seed) + ")");
        block[static_cast<size_t>(gi) * cfg.trials_per_graph + t] =
            TrialSample{n, static_cast<int>(gi), t, r.rounds, trial_seed};
      }
    });
    samples.insert(samples.end(), block.begin(), block.end());
  }
  return samples;
}

struct SizeStats {
  int n = 0;
  int trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
  // mean / ln n and variance / (ln n)^2; NaN for n < 3 where ln n <= 1.
  double mean_ratio = std::numeric_limits<double>::quiet_NaN();
  double variance_ratio = std::numeric_limits<double>::quiet_NaN();
};

struct ScalingReport {
  std::vector<SizeStats> per_size;  // ascending n
  double envelope_c = std::numeric_limits<double>::quiet_NaN();  // max mean ratio
  double envelope_d = std::numeric_limits<double>::quiet_NaN();  // max var ratio
  // Ratios non-increasing from the third size on (the finite-size stand-in
  // for the logarithmic growth claims).
  bool mean_ratio_nonincreasing_tail = false;
  bool variance_ratio_nonincreasing_tail = false;
  double reference_two_round_bound = k_two_round_resolve_bound;
};

namespace detail {
inline std::map<int, std::vector<int>> group_rounds(
    const std::vector<TrialSample>& samples) {
  std::map<int, std::vector<int>> by_n;
  for (const auto& s : samples) by_n[s.n].push_back(s.rounds);
  return by_n;
}

inline bool nonincreasing_from(const std::vector<double>& xs, size_t start) {
  for (size_t i = start + 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1] + 1e-12) return false;
  return true;
}
}  // namespace detail

inline ScalingReport scaling_report(const std::vector<TrialSample>& samples) {
  auto by_n = detail::group_rounds(samples);
  if (by_n.size() < 2)
    throw ValidationError("scaling report needs samples from >= 2 sizes");
  ScalingReport report;
  std::vector<double> mean_ratios, var_ratios;
  for (auto& [n, rounds] : by_n) {
    if (rounds.size() < 100)
      throw ValidationError("scaling report needs >= 100 trials per size");
    SizeStats s;
    s.n = n;
    s.trials = static_cast<int>(rounds.size());
    s.mean = mean(rounds);
    s.variance = sample_variance(rounds);
    s.se_mean = stderr_of_mean(rounds);
    s.se_variance = stderr_of_variance(rounds);
    if (n >= 3) {
      const double ln = std::log(static_cast<double>(n));
      s.mean_ratio = s.mean / ln;
      s.variance_ratio = s.variance / (ln * ln);
      if (std::isnan(report.envelope_c) || s.mean_ratio > report.envelope_c)
        report.envelope_c = s.mean_ratio;
      if (std::isnan(report.envelope_d) || s.variance_ratio > report.envelope_d)
        report.envelope_d = s.variance_ratio;
      mean_ratios.push_back(s.mean_ratio);
      var_ratios.push_back(s.variance_ratio);
    }
    report.per_size.push_back(s);
  }
  // "Beyond the smallest two sizes": compare from the third size onward.
  const size_t skipped = report.per_size.size() - mean_ratios.size();
  const size_t start = skipped >= 2 ? 0 : 2 - skipped;
  report.mean_ratio_nonincreasing_tail =
      detail::nonincreasing_from(mean_ratios, std::min(start, mean_ratios.size()));
  report.variance_ratio_nonincreasing_tail =
      detail::nonincreasing_from(var_ratios, std::min(start, var_ratios.size()));
  return report;
}

struct TailRow {
  int n = 0;
  int trials = 0;
  double frac_above_m_log = 0.0;  // fraction with T > M ln n
  double frac_at_least_n = 0.0;   // fraction with T >= n
};

struct TailReport {
  double epsilon = 0.0;
  double m_factor = 0.0;  // sqrt(D / (2 eps)) + C from the fitted report
  std::vector<TailRow> rows;
  bool tail_below_epsilon_at_largest = false;
  bool t_ge_n_zero_at_largest = false;
  bool t_ge_n_nonincreasing = false;
};

inline TailReport tail_checks(const std::vector<TrialSample>& samples,
                              double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("epsilon must lie in (0, 1)");
  auto by_n = detail::group_rounds(samples);
  if (by_n.size() < 3)
    throw ValidationError("tail checks need samples from >= 3 sizes");
  const ScalingReport fitted = scaling_report(samples);
  TailReport report;
  report.epsilon = epsilon;
  report.m_factor =
      std::sqrt(fitted.envelope_d / (2.0 * epsilon)) + fitted.envelope_c;
  std::vector<double> ge_n;
  for (auto& [n, rounds] : by_n) {
    TailRow row;
    row.n = n;
    row.trials = static_cast<int>(rounds.size());
    const double cutoff = report.m_factor * std::log(static_cast<double>(n));
    int above = 0, at_least_n = 0;
    for (int t : rounds) {
      if (static_cast<double>(t) > cutoff) ++above;
      if (t >= n) ++at_least_n;
    }
    row.frac_above_m_log = static_cast<double>(above) / row.trials;
    row.frac_at_least_n = static_cast<double>(at_least_n) / row.trials;
    ge_n.push_back(row.frac_at_least_n);
    report.rows.push_back(row);
  }
  report.tail_below_epsilon_at_largest =
      report.rows.back().frac_above_m_log < epsilon;
  report.t_ge_n_zero_at_largest = report.rows.back().frac_at_least_n == 0.0;
  report.t_ge_n_nonincreasing = detail::nonincreasing_from(ge_n, 0);
  return report;
}

struct TailQuantileRow {
  double delta = 0.0;
  double quantile = 0.0;      // empirical (1 - delta)-quantile of T
  double fitted_bound = 0.0;  // (1 / c_hat) ln(n / delta)
};

struct TailQuantileTable {
  int n = 0;
  int trials = 0;
  double c_hat = 0.0;  // fitted so the bound covers every reported quantile
  double reference_two_round_bound = k_two_round_resolve_bound;
  std::vector<TailQuantileRow> rows;  // delta = 0.5, 0.1, 0.01
};

// Quantiles of T at one size against the fitted logarithmic tail bound.
// c_hat = min over rows of ln(n/delta) / quantile, so the displayed bound
// dominates every row; the theoretical two-round constant is shown alongside
// for contrast, never fitted against.
inline TailQuantileTable tail_quantile_table(
    const std::vector<TrialSample>& samples) {
  if (samples.empty()) throw ValidationError("quantile table needs samples");
  auto by_n = detail::group_rounds(samples);
  if (by_n.size() != 1)
    throw ValidationError("quantile table expects samples from one size");
  const int n = by_n.begin()->first;
  const std::vector<int>& rounds = by_n.begin()->second;
  TailQuantileTable table;
  table.n = n;
  table.trials = static_cast<int>(rounds.size());
  const double deltas[] = {0.5, 0.1, 0.01};
  double c_hat = std::numeric_limits<double>::infinity();
  for (double d : deltas) {
    TailQuantileRow row;
    row.delta = d;
    row.quantile = quantile(rounds, 1.0 - d);
    if (row.quantile > 0.0)
      c_hat = std::min(c_hat, std::log(n / d) / row.quantile);
    table.rows.push_back(row);
  }
  table.c_hat = c_hat;
  for (auto& row : table.rows)
    row.fitted_bound =
        std::isinf(c_hat) ? 0.0 : std::log(n / row.delta) / c_hat;
  return table;
}

}  // namespace ncg
