#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncg/borda.hpp"
#include "ncg/parallel.hpp"
#include "ncg/samplers.hpp"

// The alternating local-optimum driver: reduce the network, resample the
// survivors toward a better in-list proper coloring, repeat until everyone
// has departed. The banked points of the quitters plus the current points of
// the survivors never decrease.

namespace ncg {

struct PhasePoint {
  int phase;              // 0 is the starting state; then one per half-step
  long long welfare;      // banked quitter points + current survivor points
  int vertices_remaining;
};

struct LocalOptimumResult {
  long long total_welfare = 0;
  std::vector<PhasePoint> trace;
  std::vector<int> departure_order;   // original ids
  std::vector<int> departure_colors;  // frozen colors, same order
};

namespace detail {
inline constexpr uint64_t kTagLocalMh = 0x6d;
inline constexpr uint64_t kTagEstimateRun = 0x65;
}  // namespace detail

// Alternates reduction and mh_steps of resampling until the network empties.
// max_phases caps the reduce+resample cycles (default 10 n); exceeding it is
// a diagnostic failure, not a silent stop.
inline LocalOptimumResult local_optimal_run(
    const Graph& g0, const PreferenceProfile& prefs0,
    const ColorAssignment& l0, int q, int64_t mh_steps, uint64_t seed,
    AcceptanceMode mode = AcceptanceMode::standard, int max_phases = 0) {
  const int n0 = g0.vertex_count();
  validate_profile(prefs0, n0, q);
  validate_assignment(g0, l0, q);
  if (!is_proper(g0, l0))
    throw ValidationError("local search requires a proper starting coloring");
  if (mh_steps < 0) throw ValidationError("mh_steps must be >= 0");
  if (max_phases <= 0) max_phases = 10 * n0;

  Graph g = g0;
  PreferenceProfile prefs = prefs0;
  ColorAssignment colors = l0;
  AvailableColorLists avail = available_colors(prefs, colors);
  std::vector<int> ids(n0);
  std::iota(ids.begin(), ids.end(), 0);

  LocalOptimumResult result;
  long long banked = 0;
  int phase = 0;
  auto record = [&] {
    result.trace.push_back(
        {phase, banked + borda_welfare(q, prefs, colors),
         g.vertex_count()});
  };
  record();

  for (int cycle = 0; cycle < max_phases; ++cycle) {
    ReductionOutcome red = reduce_network(g, prefs, colors, avail, ids);
    banked += red.payoff_gained;
    for (size_t i = 0; i < red.quitters.size(); ++i) {
      result.departure_order.push_back(red.quitters[i]);
      result.departure_colors.push_back(red.quitter_colors[i]);
    }
    g = std::move(red.graph);
    prefs = std::move(red.prefs);
    colors = std::move(red.coloring);
    avail = std::move(red.avail);
    ids = std::move(red.orig_ids);
    ++phase;
    record();
    if (g.vertex_count() == 0) {
      result.total_welfare = banked;
      return result;
    }

    colors = mh_run(g, colors, avail, mh_steps, mode,
                    stream_key(seed, detail::kTagLocalMh, cycle));
    avail = truncate_at_current(avail, colors);
    ++phase;
    record();
  }
  throw InternalError("local search exceeded " + std::to_string(max_phases) +
                      " phases without emptying the network");
}

struct EstimateResult {
  double mean = 0.0;
  long long max = 0;
  std::vector<long long> samples;
};

// k independent local runs with disjoint streams; the sample mean estimates
// the expected locally-optimal welfare. Repetitions run concurrently and are
// folded in index order.
inline EstimateResult estimate_expected_optimum(
    const Graph& g0, const PreferenceProfile& prefs0,
    const ColorAssignment& l0, int q, int k, int64_t mh_steps, uint64_t seed,
    AcceptanceMode mode = AcceptanceMode::standard, int threads = 0) {
  if (k < 1) throw ValidationError("estimate needs k >= 1 repetitions");
  EstimateResult result;
  result.samples.assign(k, 0);
  detail::parallel_for(k, threads, [&](int64_t rep) {
    LocalOptimumResult run = local_optimal_run(
        g0, prefs0, l0, q, mh_steps,
        stream_key(seed, detail::kTagEstimateRun, rep), mode);
    result.samples[rep] = run.total_welfare;
  });
  double sum = 0.0;
  result.max = result.samples[0];
  for (long long s : result.samples) {
    sum += static_cast<double>(s);
    result.max = std::max(result.max, s);
  }
  result.mean = sum / static_cast<double>(k);
  return result;
}

}  // namespace ncg
