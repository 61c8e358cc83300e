#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "ncg/graph.hpp"
#include "support.hpp"

using namespace ncg;

TEST_CASE("generate_er degenerate probabilities") {
  Graph empty = generate_er(5, 0.0, 7);
  CHECK(empty.edge_count() == 0);
  Graph complete = generate_er(5, 1.0, 7);
  CHECK(complete.edge_count() == 10);
}

TEST_CASE("generate_er rejects n = 0") {
  CHECK_THROWS_AS(generate_er(0, 0.5, 1), ValidationError);
}

TEST_CASE("generate_er is deterministic in the seed") {
  Graph a = generate_er(30, 0.3, 42);
  Graph b = generate_er(30, 0.3, 42);
  CHECK(a.edges() == b.edges());
  Graph c = generate_er(30, 0.3, 43);
  CHECK(a.edges() != c.edges());
}

TEST_CASE("generate_er edge count matches the binomial mean") {
  // n=20, p=0.3: mean edge count p * C(20,2) = 57.
  double total = 0.0;
  for (uint64_t seed = 0; seed < 1000; ++seed)
    total += generate_er(20, 0.3, seed).edge_count();
  const double avg = total / 1000.0;
  CHECK(std::abs(avg - 57.0) <= 3.0);
}

TEST_CASE("max_degree basics") {
  CHECK(max_degree(support::edgeless_graph(5)) == 0);
  CHECK(max_degree(support::complete_graph(5)) == 4);
  CHECK(max_degree(support::star_graph(7)) == 7);
}

TEST_CASE("is_proper basics") {
  CHECK(is_proper(support::complete_graph(3), {0, 1, 2}));
  CHECK_FALSE(is_proper(Graph::from_edges(2, {{0, 1}}), {0, 0}));
  support::ReductionFixture fix;
  CHECK(is_proper(fix.graph, fix.coloring));
}

TEST_CASE("is_proper rejects a length mismatch") {
  CHECK_THROWS_AS(is_proper(support::complete_graph(3), {0, 1}),
                  ValidationError);
}

TEST_CASE("graph construction rejects bad edges") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), ValidationError);
}

TEST_CASE("graph save/load round-trip") {
  support::ReductionFixture fix;
  std::ostringstream out;
  save_graph(fix.graph, out, {"meta line"});
  std::istringstream in(out.str());
  Graph loaded = load_graph(in);
  CHECK(loaded.vertex_count() == fix.graph.vertex_count());
  CHECK(loaded.edges() == fix.graph.edges());
}

TEST_CASE("graph load rejects malformed input naming the line") {
  std::istringstream self_loop("n 4\n0 1\n3 3\n");
  CHECK_THROWS_WITH(load_graph(self_loop, "g"),
                    Catch::Matchers::ContainsSubstring("line 3"));
  std::istringstream out_of_range("n 4\n0 7\n");
  CHECK_THROWS_WITH(load_graph(out_of_range, "g"),
                    Catch::Matchers::ContainsSubstring("out of range"));
  std::istringstream no_header("0 1\n");
  CHECK_THROWS_AS(load_graph(no_header, "g"), ValidationError);
  std::istringstream junk("n 4\n0 x\n");
  CHECK_THROWS_WITH(load_graph(junk, "g"),
                    Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("generated graphs keep adjacency symmetric and degrees below n") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    SplitMix64 rng(stream_key(seed, 0x70));
    const int n = 2 + static_cast<int>(rng.below(40));
    const double p = rng.next_double();
    Graph g = generate_er(n, p, seed);
    CHECK(max_degree(g) < n);
    for (int v = 0; v < n; ++v)
      for (int u : g.neighbors(v)) {
        const auto& back = g.neighbors(u);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
      }
  }
}

TEST_CASE("is_proper does not depend on edge orientation") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    SplitMix64 rng(stream_key(seed, 0x71));
    const int n = 2 + static_cast<int>(rng.below(20));
    Graph g = generate_er(n, 0.4, seed);
    const int q = 3;
    ColorAssignment colors(n);
    for (int v = 0; v < n; ++v) colors[v] = static_cast<int>(rng.below(q));
    bool manual = true;
    for (int v = 0; v < n; ++v)
      for (int u : g.neighbors(v))
        if (colors[u] == colors[v]) manual = false;
    CHECK(is_proper(g, colors) == manual);
  }
}
