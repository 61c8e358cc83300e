#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>

#include "ncg/samplers.hpp"
#include "support.hpp"

using namespace ncg;

TEST_CASE("schedule values") {
  CHECK(TemperatureSchedule::parse("log1p").value(0) == 0.0);
  CHECK(TemperatureSchedule::parse("linear").value(7) == 7.0);
  CHECK(TemperatureSchedule::parse("quadratic").value(3) == 9.0);
  TemperatureSchedule constant = TemperatureSchedule::parse("constant");
  constant.lambda0 = 0.25;
  CHECK(schedule_value(constant, 12345) == 0.25);
  TemperatureSchedule geo = TemperatureSchedule::parse("geometric");
  geo.lambda0 = 1.0;
  geo.ratio = 2.0;
  geo.stage = 10;
  CHECK(geo.value(9) == 1.0);
  CHECK(geo.value(10) == 2.0);
  CHECK(geo.value(25) == 4.0);
  CHECK_THROWS_AS(TemperatureSchedule::parse("cosine"), ValidationError);
  geo.ratio = 0.5;
  CHECK_THROWS_AS(geo.validate(), ValidationError);
}

TEST_CASE("paper-style schedules never decrease") {
  for (const char* name : {"log1p", "linear", "quadratic"}) {
    TemperatureSchedule s = TemperatureSchedule::parse(name);
    double prev = s.value(0);
    CHECK(prev >= 0.0);
    for (int64_t t = 1; t <= 1000; t += 7) {
      const double v = s.value(t);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("resampling no-ops") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  const ColorAssignment l0 = {0, 1};
  CHECK(mh_run(k2, l0, {{0}, {1}}, 1000, AcceptanceMode::standard, 3) == l0);
  CHECK(mh_run(k2, l0, {{0, 1, 2}, {0, 1, 2}}, 0, AcceptanceMode::standard,
               3) == l0);
}

TEST_CASE("resampler rejects bad inputs") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  CHECK_THROWS_AS(
      mh_run(k2, {0, 0}, {{0}, {0}}, 10, AcceptanceMode::standard, 1),
      ValidationError);  // improper start
  CHECK_THROWS_AS(
      mh_run(k2, {0, 1}, {{0}, {}}, 10, AcceptanceMode::standard, 1),
      ValidationError);  // empty list
  CHECK_THROWS_AS(
      mh_run(k2, {0, 1}, {{0}, {2}}, 10, AcceptanceMode::standard, 1),
      ValidationError);  // current color missing
}

TEST_CASE("target enumeration counts") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  AvailableColorLists full2 = {{0, 1, 2}, {0, 1, 2}};
  std::vector<ColorAssignment> t2 = enumerate_target(k2, full2);
  CHECK(t2.size() == 6);
  CHECK(std::find(t2.begin(), t2.end(), ColorAssignment{0, 1}) != t2.end());

  Graph k3 = support::complete_graph(3);
  AvailableColorLists full3 = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
  CHECK(enumerate_target(k3, full3).size() == 6);  // 3! permutations

  CHECK_THROWS_AS(enumerate_target(k3, full3, /*cap=*/10), ValidationError);
}

TEST_CASE("proposals are symmetric by construction") {
  Graph k3 = support::complete_graph(3);
  AvailableColorLists avail = {{0, 1, 2, 3}, {1, 2}, {0, 2, 3}};
  const int n = k3.vertex_count();
  // Forward and reverse proposal mass for a single-vertex change both equal
  // 1 / (n |avail[v]|): the list is frozen, so the size cannot depend on
  // which endpoint of the move we stand at.
  for (int v = 0; v < n; ++v) {
    const double forward = 1.0 / (n * double(avail[v].size()));
    const double reverse = 1.0 / (n * double(avail[v].size()));
    CHECK(forward == reverse);
  }
}

TEST_CASE("every visited state is proper, in-list, and no worse") {
  Graph g = generate_er(10, 0.35, 0xa1);
  const int q = max_degree(g) + 2;
  PreferenceProfile prefs = random_profile(10, q, 0xa2);
  ConvergenceResult played = play_to_convergence(g, q, 0xa3);
  REQUIRE(played.converged);
  const ColorAssignment l0 = played.final_state.assignment;
  const AvailableColorLists avail = available_colors(prefs, l0);
  const long long w0 = borda_welfare(q, prefs, l0);
  for (AcceptanceMode mode :
       {AcceptanceMode::standard, AcceptanceMode::literal}) {
    int64_t visited = 0;
    ColorAssignment out = mh_run_observe(
        g, l0, avail, 3000, mode, 0xa4, [&](const ColorAssignment& colors) {
          ++visited;
          REQUIRE(is_proper(g, colors));
          for (size_t v = 0; v < colors.size(); ++v)
            REQUIRE(std::find(avail[v].begin(), avail[v].end(), colors[v]) !=
                    avail[v].end());
        });
    CHECK(visited == 3000);
    CHECK(borda_welfare(q, prefs, out) >= w0);
  }
}

TEST_CASE("occupancy is uniform over the target set in both modes") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  const AvailableColorLists avail = {{0, 1, 2}, {0, 1, 2}};
  const std::vector<ColorAssignment> target = enumerate_target(k2, avail);
  REQUIRE(target.size() == 6);
  struct ModeCase {
    AcceptanceMode mode;
    int64_t stride;
    uint64_t seed;
  };
  for (const ModeCase& c :
       {ModeCase{AcceptanceMode::standard, 25, 0xf1},
        ModeCase{AcceptanceMode::literal, 150, 0xf2}}) {
    support::OccupancyCounter counter(3, 2000, c.stride);
    mh_run_observe(k2, {0, 1}, avail, 400'000, c.mode, c.seed,
                   std::ref(counter));
    const double p =
        chi_square_uniform_pvalue(counter.aligned_counts(target));
    CHECK(p > 0.01);
  }
}

TEST_CASE("annealing at zero temperature resamples uniformly") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  const int q = 3;
  PreferenceProfile prefs = {{0, 1, 2}, {2, 1, 0}};
  const ColorAssignment l0 = {2, 0};  // both at bottom preference
  const std::vector<ColorAssignment> target =
      enumerate_target(k2, available_colors(prefs, l0));
  REQUIRE(target.size() == 6);
  TemperatureSchedule schedule = TemperatureSchedule::parse("constant");
  schedule.lambda0 = 0.0;
  support::OccupancyCounter counter(q, 2000, 25);
  sa_run_observe(k2, prefs, l0, q, 400'000, schedule,
                 AcceptanceMode::standard, 0xf3, std::ref(counter));
  CHECK(chi_square_uniform_pvalue(counter.aligned_counts(target)) > 0.01);
}

TEST_CASE("annealing at fixed temperature matches the weighted law") {
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  const int q = 3;
  PreferenceProfile prefs = {{0, 1, 2}, {2, 1, 0}};
  const ColorAssignment l0 = {2, 0};
  const std::vector<ColorAssignment> target =
      enumerate_target(k2, available_colors(prefs, l0));
  const double lambda = 0.5;
  std::vector<double> weights;
  for (const auto& colors : target)
    weights.push_back(
        std::exp(lambda * double(borda_welfare(q, prefs, colors))));
  TemperatureSchedule schedule = TemperatureSchedule::parse("constant");
  schedule.lambda0 = lambda;
  support::OccupancyCounter counter(q, 2000, 25);
  sa_run_observe(k2, prefs, l0, q, 400'000, schedule,
                 AcceptanceMode::standard, 0xf4, std::ref(counter));
  CHECK(chi_square_pvalue(counter.aligned_counts(target), weights) > 0.01);
}

TEST_CASE("annealing trace bookkeeping") {
  Graph g = generate_er(8, 0.4, 0xb1);
  const int q = max_degree(g) + 2;
  PreferenceProfile prefs = random_profile(8, q, 0xb2);
  ConvergenceResult played = play_to_convergence(g, q, 0xb3);
  REQUIRE(played.converged);
  const ColorAssignment l0 = played.final_state.assignment;
  TemperatureSchedule schedule = TemperatureSchedule::parse("log1p");
  SaTrace trace = sa_run(g, prefs, l0, q, 5000, schedule,
                         AcceptanceMode::standard, 0xb4);
  REQUIRE(trace.welfare.size() == 5001);
  const long long ceiling = static_cast<long long>(q - 1) * 8;
  long long best = trace.welfare.front();
  for (long long w : trace.welfare) {
    CHECK(w <= ceiling);
    best = std::max(best, w);
  }
  CHECK(trace.best_welfare == best);
  CHECK(trace.welfare[trace.reaching_time] == best);
  for (int64_t t = 0; t < trace.reaching_time; ++t)
    CHECK(trace.welfare[t] < best);
  CHECK(borda_welfare(q, prefs, trace.best_assignment) == best);
  // The recorded temperatures follow the schedule.
  for (size_t t = 0; t < trace.lambda.size(); ++t)
    CHECK(trace.lambda[t] == schedule.value(static_cast<int64_t>(t)));
}

TEST_CASE("annealing respects the frozen lists") {
  Graph g = generate_er(8, 0.4, 0xc1);
  const int q = max_degree(g) + 2;
  PreferenceProfile prefs = random_profile(8, q, 0xc2);
  ConvergenceResult played = play_to_convergence(g, q, 0xc3);
  REQUIRE(played.converged);
  const ColorAssignment l0 = played.final_state.assignment;
  const AvailableColorLists avail = available_colors(prefs, l0);
  TemperatureSchedule schedule = TemperatureSchedule::parse("linear");
  sa_run_observe(g, prefs, l0, q, 2000, schedule, AcceptanceMode::literal,
                 0xc4, [&](const ColorAssignment& colors) {
                   REQUIRE(is_proper(g, colors));
                   for (size_t v = 0; v < colors.size(); ++v)
                     REQUIRE(std::find(avail[v].begin(), avail[v].end(),
                                       colors[v]) != avail[v].end());
                 });
}
