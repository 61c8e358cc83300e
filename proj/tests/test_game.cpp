#include <catch2/catch_amalgamated.hpp>

#include "ncg/game.hpp"
#include "support.hpp"

using namespace ncg;

TEST_CASE("payoff_vector basics") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  CHECK(payoff_vector(k2, {0, 1}) == std::vector<uint8_t>{1, 1});
  CHECK(payoff_vector(k2, {0, 0}) == std::vector<uint8_t>{0, 0});
  support::ReductionFixture fix;
  CHECK(payoff_vector(fix.graph, fix.coloring) ==
        std::vector<uint8_t>(6, 1));
}

TEST_CASE("round_update leaves an all-satisfied state unchanged") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  GameState state = state_from(k2, {0, 1});
  GameState next = round_update(k2, state, 3, 99);
  CHECK(next.assignment == state.assignment);
  CHECK(next.round == state.round);
}

TEST_CASE("round_update collision frequency on a conflicting pair") {
  // From (c, c) with q=3 both endpoints redraw among the two other colors;
  // 2 of the 4 equally likely outcomes collide.
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  GameState start = state_from(k2, {0, 0});
  int collisions = 0;
  const int trials = 100'000;
  for (int t = 0; t < trials; ++t) {
    GameState next = round_update(k2, start, 3, stream_key(11, t));
    CHECK(next.assignment[0] != 0);
    CHECK(next.assignment[1] != 0);
    collisions += next.assignment[0] == next.assignment[1];
  }
  CHECK(std::abs(collisions / double(trials) - 0.5) <= 0.01);
}

TEST_CASE("an artificially unsatisfied isolated vertex redraws freely") {
  Graph g = support::edgeless_graph(1);
  GameState forced{{2}, {0}, 0};  // inconsistent on purpose
  std::vector<int> seen(4, 0);
  for (int t = 0; t < 400; ++t) {
    GameState next = round_update(g, forced, 4, stream_key(5, t));
    CHECK(next.payoffs == std::vector<uint8_t>{1});
    ++seen[next.assignment[0]];
  }
  for (int c = 0; c < 4; ++c) CHECK(seen[c] > 0);  // nothing is forbidden
}

TEST_CASE("palette precondition") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  GameState state = state_from(k2, {0, 0});
  CHECK_THROWS_AS(round_update(k2, state, 2, 1), ValidationError);
  CHECK_NOTHROW(round_update(k2, state, 2, 1, /*allow_small_q=*/true));
  CHECK_THROWS_AS(play_to_convergence(k2, 2, 1), ValidationError);
}

TEST_CASE("edgeless graphs converge immediately for any q >= 1") {
  Graph g = support::edgeless_graph(6);
  for (int q : {1, 2, 5}) {
    ConvergenceResult r = play_to_convergence(g, q, 17);
    CHECK(r.converged);
    CHECK(r.rounds == 0);
  }
}

TEST_CASE("conflicting pair absorption time, conditioned and unconditioned") {
  // Post-collision rounds are geometric(1/2): conditional mean 2; a uniform
  // initial draw collides with probability 1/3, so the unconditioned mean
  // is 2/3.
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  const int trials = 100'000;
  double sum_all = 0.0, sum_collided = 0.0;
  int collided = 0;
  for (int t = 0; t < trials; ++t) {
    ConvergenceResult r =
        play_to_convergence(k2, 3, stream_key(23, t), 1'000'000, true);
    REQUIRE(r.converged);
    sum_all += r.rounds;
    if (r.trajectory.front().satisfied < 2) {
      ++collided;
      sum_collided += r.rounds;
    }
  }
  CHECK(std::abs(sum_collided / collided - 2.0) <= 0.05);
  CHECK(std::abs(sum_all / trials - 2.0 / 3.0) <= 0.02);
}

TEST_CASE("satisfaction_lower_bound values") {
  CHECK(satisfaction_lower_bound(2, 0) == 1.0);
  CHECK(satisfaction_lower_bound(5, 3) == Catch::Approx(0.125));
  CHECK(satisfaction_lower_bound(6, 2) == Catch::Approx(0.5625));
  CHECK_THROWS_AS(satisfaction_lower_bound(4, 3), ValidationError);
}

TEST_CASE("timeouts are explicit and carry the partial trajectory") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  ConvergenceResult r = play_from(k2, {0, 0}, 3, 5, /*max_rounds=*/0, true);
  CHECK_FALSE(r.converged);
  CHECK(r.rounds == 0);
  CHECK(r.trajectory.size() == 1);
}

TEST_CASE("plays are deterministic in the seed") {
  Graph g = generate_er(24, 0.25, 3);
  const int q = max_degree(g) + 2;
  ConvergenceResult a = play_to_convergence(g, q, 77, 1'000'000, true);
  ConvergenceResult b = play_to_convergence(g, q, 77, 1'000'000, true);
  CHECK(a.rounds == b.rounds);
  CHECK(a.final_state.assignment == b.final_state.assignment);
}

TEST_CASE("satisfied vertices never move, redraws stay legal") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = generate_er(16, 0.3, stream_key(seed, 0x11));
    const int q = max_degree(g) + 2;
    GameState state = state_from(
        g, ColorAssignment(g.vertex_count(), 0));  // maximal conflicts
    int prev_satisfied = detail::satisfied_count(state);
    for (int round = 0; round < 50 && !detail::all_satisfied(state); ++round) {
      GameState next = round_update(g, state, q, seed);
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (state.payoffs[v]) {
          CHECK(next.assignment[v] == state.assignment[v]);
        } else {
          for (int u : g.neighbors(v))
            CHECK(next.assignment[v] != state.assignment[u]);
        }
      }
      const int satisfied = detail::satisfied_count(next);
      CHECK(satisfied >= prev_satisfied);
      prev_satisfied = satisfied;
      state = std::move(next);
    }
    CHECK(detail::all_satisfied(state));
  }
}

TEST_CASE("one-round resolution frequency respects the analytic bound") {
  // Complete 3-vertex graph, q = 5: bound (1 - 1/3)^2 = 4/9.
  Graph k3 = support::complete_graph(3);
  const int q = 5;
  const double bound = satisfaction_lower_bound(q, max_degree(k3));
  int64_t events = 0, resolved = 0;
  for (uint64_t trial = 0; events < 100'000; ++trial) {
    GameState state = state_from(k3, {0, 0, 0});
    while (!detail::all_satisfied(state)) {
      GameState next = round_update(k3, state, q, stream_key(31, trial));
      for (int v = 0; v < 3; ++v) {
        if (state.payoffs[v]) continue;
        ++events;
        resolved += next.payoffs[v];
      }
      state = std::move(next);
    }
  }
  const double freq = double(resolved) / double(events);
  const double se = binomial_stderr(freq, double(events));
  CHECK(freq >= bound - 3.0 * se);
}
