#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ncg/graph.hpp"

// Greedy round dynamics: satisfied vertices never move; every unsatisfied
// vertex simultaneously redraws a uniform color among those its neighbors did
// not hold in the previous round.
//
// Stream layout: the draws that produce the assignment of round r come from
// substream(seed, r, vertex); the initial assignment is round 0.

namespace ncg {

struct GameState {
  ColorAssignment assignment;
  std::vector<uint8_t> payoffs;  // payoffs[i] == 1 iff no neighbor shares color
  int round = 0;
};

// payoffs[i] = 1 iff all neighbors differ in color; isolated vertices get 1.
inline std::vector<uint8_t> payoff_vector(const Graph& g,
                                          const ColorAssignment& colors) {
  validate_assignment(g, colors);
  std::vector<uint8_t> payoffs(g.vertex_count(), 1);
  for (auto [u, v] : g.edges())
    if (colors[u] == colors[v]) payoffs[u] = payoffs[v] = 0;
  return payoffs;
}

inline GameState state_from(const Graph& g, const ColorAssignment& colors) {
  return GameState{colors, payoff_vector(g, colors), 0};
}

// The dynamics need q >= max degree + 2 so every redrawing vertex has at
// least two legal colors. Edgeless graphs place no constraint beyond q >= 1.
inline void check_palette(int q, int delta, bool allow_small_q = false) {
  if (q < 1) throw ValidationError("palette size q must be >= 1");
  if (delta >= 1 && q < delta + 2 && !allow_small_q)
    throw ValidationError(
        "q = " + std::to_string(q) + " violates the q >= max degree + 2 " +
        "precondition (max degree " + std::to_string(delta) +
        "); pass the small-palette override to experiment anyway");
}

namespace detail {
// Colors NOT held by any neighbor of v in `colors`.
inline std::vector<int> unused_neighbor_colors(const Graph& g,
                                               const ColorAssignment& colors,
                                               int q, int v) {
  std::vector<uint8_t> used(q, 0);
  for (int u : g.neighbors(v)) used[colors[u]] = 1;
  std::vector<int> avail;
  avail.reserve(q);
  for (int c = 0; c < q; ++c)
    if (!used[c]) avail.push_back(c);
  return avail;
}
}  // namespace detail

// One simultaneous round. Satisfied vertices keep their colors; the rest
// redraw from the colors unused by their neighbors in the prior snapshot.
// An all-satisfied state is absorbing and returned unchanged.
inline GameState round_update(const Graph& g, const GameState& state, int q,
                              uint64_t seed, bool allow_small_q = false) {
  check_palette(q, max_degree(g), allow_small_q);
  validate_assignment(g, state.assignment, q);

  bool all_satisfied = true;
  for (uint8_t p : state.payoffs) all_satisfied &= (p == 1);
  if (all_satisfied) return state;

  GameState next;
  next.assignment = state.assignment;
  next.round = state.round + 1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (state.payoffs[v]) continue;
    std::vector<int> avail =
        detail::unused_neighbor_colors(g, state.assignment, q, v);
    if (avail.empty())
      throw ValidationError("vertex " + std::to_string(v) +
                            " has no legal color (palette too small)");
    SplitMix64 rng = substream(seed, next.round, v);
    next.assignment[v] = avail[rng.below(avail.size())];
  }
  next.payoffs = payoff_vector(g, next.assignment);
  return next;
}

// Probability lower bound for an unsatisfied vertex resolving in one round:
// (1 - 1/(q - delta))^delta. Equals (1/2)^delta at the q = delta + 2 edge.
inline double satisfaction_lower_bound(int q, int delta) {
  if (delta < 0) throw ValidationError("max degree must be >= 0");
  if (q < delta + 2)
    throw ValidationError("satisfaction_lower_bound requires q >= delta + 2");
  return std::pow(1.0 - 1.0 / static_cast<double>(q - delta), delta);
}

struct TrajectoryPoint {
  int round;
  int satisfied;
  int conflict_edges;
};

struct ConvergenceResult {
  bool converged = false;  // false means the round cap was hit
  int rounds = 0;          // update rounds executed after the initial draw
  GameState final_state;
  std::vector<TrajectoryPoint> trajectory;  // recorded only when requested
};

namespace detail {
inline bool all_satisfied(const GameState& s) {
  for (uint8_t p : s.payoffs)
    if (!p) return false;
  return true;
}
inline int satisfied_count(const GameState& s) {
  int k = 0;
  for (uint8_t p : s.payoffs) k += p;
  return k;
}
}  // namespace detail

// Iterate round_update from a given assignment until every payoff is 1 or
// max_rounds updates have run. A timeout is reported explicitly, never
// silently truncated.
inline ConvergenceResult play_from(const Graph& g, const ColorAssignment& start,
                                   int q, uint64_t seed,
                                   int max_rounds = 1'000'000,
                                   bool record_trajectory = false,
                                   bool allow_small_q = false) {
  check_palette(q, max_degree(g), allow_small_q);
  GameState state = state_from(g, start);
  ConvergenceResult result;
  auto record = [&](const GameState& s) {
    if (record_trajectory)
      result.trajectory.push_back({s.round, detail::satisfied_count(s),
                                   conflict_edge_count(g, s.assignment)});
  };
  record(state);
  while (!detail::all_satisfied(state)) {
    if (state.round >= max_rounds) {
      result.converged = false;
      result.rounds = state.round;
      result.final_state = std::move(state);
      return result;
    }
    state = round_update(g, state, q, seed, allow_small_q);
    record(state);
  }
  result.converged = true;
  result.rounds = state.round;
  result.final_state = std::move(state);
  return result;
}

// Round 0 draws every color uniformly from the full palette, then plays to
// convergence. A proper initial draw yields rounds == 0.
inline ConvergenceResult play_to_convergence(const Graph& g, int q,
                                             uint64_t seed,
                                             int max_rounds = 1'000'000,
                                             bool record_trajectory = false,
                                             bool allow_small_q = false) {
  check_palette(q, max_degree(g), allow_small_q);
  ColorAssignment initial(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    SplitMix64 rng = substream(seed, 0, v);
    initial[v] = static_cast<int>(rng.below(q));
  }
  return play_from(g, initial, q, seed, max_rounds, record_trajectory,
                   allow_small_q);
}

}  // namespace ncg
