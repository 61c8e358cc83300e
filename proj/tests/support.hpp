#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ncg/amc.hpp"
#include "ncg/borda.hpp"
#include "ncg/game.hpp"
#include "ncg/graph.hpp"
#include "ncg/stats.hpp"

namespace support {

inline ncg::Graph complete_graph(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  return ncg::Graph::from_edges(k, std::move(edges));
}

inline ncg::Graph path_graph(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < k; ++v) edges.emplace_back(v, v + 1);
  return ncg::Graph::from_edges(k, std::move(edges));
}

// Center 0, leaves 1..leaves.
inline ncg::Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return ncg::Graph::from_edges(leaves + 1, std::move(edges));
}

inline ncg::Graph edgeless_graph(int k) {
  return ncg::Graph::from_edges(k, {});
}

// Six-vertex reduction fixture: palette 0..3 ranked identically by everyone
// (0 best), coloring proper, three cascading departures expected.
struct ReductionFixture {
  ncg::Graph graph = ncg::Graph::from_edges(
      6, {{1, 3}, {1, 5}, {0, 2}, {0, 4}, {2, 4}, {0, 5}});
  int q = 4;
  ncg::PreferenceProfile prefs =
      ncg::PreferenceProfile(6, std::vector<int>{0, 1, 2, 3});
  ncg::ColorAssignment coloring = {1, 1, 2, 2, 0, 3};
};

struct SimStats {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
};

// Monte Carlo absorption statistics from a fixed starting configuration;
// the cross-check oracle for the exact chain quantities.
inline SimStats simulate_absorption(const ncg::Graph& g, int q,
                                    const ncg::ColorAssignment& start,
                                    int trials, uint64_t seed) {
  std::vector<int> rounds(trials);
  for (int t = 0; t < trials; ++t) {
    ncg::ConvergenceResult r =
        ncg::play_from(g, start, q, ncg::stream_key(seed, t));
    if (!r.converged) throw std::runtime_error("oracle trial timed out");
    rounds[t] = r.rounds;
  }
  SimStats s;
  s.mean = ncg::mean(rounds);
  s.variance = ncg::sample_variance(rounds);
  s.se_mean = ncg::stderr_of_mean(rounds);
  s.se_variance = ncg::stderr_of_variance(rounds);
  return s;
}

// Transition probability s -> target computed per-target from the update
// rule (independent of the odometer construction in build_chain):
// satisfied vertices must keep their colors; each unsatisfied vertex lands
// on a legal color with probability 1 / |legal set|.
inline double transition_probability(const ncg::Graph& g, int q,
                                     const ncg::ColorAssignment& from,
                                     const ncg::ColorAssignment& to) {
  std::vector<uint8_t> payoffs = ncg::payoff_vector(g, from);
  double p = 1.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (payoffs[v]) {
      if (to[v] != from[v]) return 0.0;
      continue;
    }
    bool forbidden = false;
    int legal = 0;
    for (int c = 0; c < q; ++c) {
      bool used = false;
      for (int u : g.neighbors(v))
        if (from[u] == c) used = true;
      if (!used) ++legal;
      if (c == to[v]) forbidden = used;
    }
    if (forbidden || legal == 0) return 0.0;
    p /= static_cast<double>(legal);
  }
  return p;
}

// Occupancy of encoded states along a chain, sampled every `stride` steps
// after `burn` steps; used by the chi-square stationarity checks.
class OccupancyCounter {
 public:
  OccupancyCounter(int q, int64_t burn, int64_t stride)
      : q_(q), burn_(burn), stride_(stride) {}

  void operator()(const ncg::ColorAssignment& colors) {
    ++step_;
    if (step_ <= burn_) return;
    if ((step_ - burn_) % stride_ != 0) return;
    ++counts_[ncg::encode_state(colors, q_)];
  }

  // Counts aligned to the given target enumeration; throws when the chain
  // visited anything outside it.
  std::vector<int64_t> aligned_counts(
      const std::vector<ncg::ColorAssignment>& target) const {
    std::map<int64_t, int64_t> remaining = counts_;
    std::vector<int64_t> out;
    out.reserve(target.size());
    for (const auto& colors : target) {
      auto it = remaining.find(ncg::encode_state(colors, q_));
      if (it == remaining.end()) {
        out.push_back(0);
      } else {
        out.push_back(it->second);
        remaining.erase(it);
      }
    }
    if (!remaining.empty())
      throw std::runtime_error("chain visited states outside the target set");
    return out;
  }

  int64_t samples() const {
    int64_t total = 0;
    for (const auto& [state, count] : counts_) total += count;
    return total;
  }

 private:
  int q_;
  int64_t burn_;
  int64_t stride_;
  int64_t step_ = 0;
  std::map<int64_t, int64_t> counts_;
};

}  // namespace support
