#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/rng.hpp"

namespace ncg {

// A color per vertex, values in [0, q). The palette size q travels alongside.
using ColorAssignment = std::vector<int>;

// Undirected simple graph. Immutable after construction; safe to share
// across threads.
class Graph {
 public:
  Graph() = default;

  // Validates and normalizes: edges stored with u < v, sorted. Duplicates
  // are an error, not silently merged.
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw ValidationError("graph must have at least one vertex");
    for (auto& [u, v] : edges) {
      if (u == v)
        throw ValidationError("self-loop on vertex " + std::to_string(u));
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw ValidationError("edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") out of range for n=" +
                              std::to_string(n));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw ValidationError("duplicate edge in edge list");

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adjacency_.assign(n, {});
    for (auto [u, v] : g.edges_) {
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    return g;
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// G(n, p): one independent coin per vertex pair, drawn in fixed (u < v)
// order from the stream keyed by the seed alone, so equal (n, p, seed)
// reproduce bit-identical edge sets everywhere.
inline Graph generate_er(int n, double p, uint64_t seed) {
  if (n < 1) throw ValidationError("generate_er: n must be >= 1");
  if (p < 0.0 || p > 1.0)
    throw ValidationError("generate_er: p must be in [0, 1]");
  SplitMix64 rng(stream_key(seed));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_double() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

inline int max_degree(const Graph& g) {
  int d = 0;
  for (int v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
  return d;
}

inline void validate_assignment(const Graph& g, const ColorAssignment& colors,
                                int q = -1) {
  if (static_cast<int>(colors.size()) != g.vertex_count())
    throw ValidationError("assignment length " +
                          std::to_string(colors.size()) +
                          " does not match vertex count " +
                          std::to_string(g.vertex_count()));
  for (int c : colors)
    if (c < 0 || (q >= 0 && c >= q))
      throw ValidationError("color " + std::to_string(c) +
                            " outside palette of size " + std::to_string(q));
}

// True iff no edge is monochromatic.
inline bool is_proper(const Graph& g, const ColorAssignment& colors) {
  validate_assignment(g, colors);
  for (auto [u, v] : g.edges())
    if (colors[u] == colors[v]) return false;
  return true;
}

inline int conflict_edge_count(const Graph& g, const ColorAssignment& colors) {
  validate_assignment(g, colors);
  int count = 0;
  for (auto [u, v] : g.edges())
    if (colors[u] == colors[v]) ++count;
  return count;
}

// --- file format -----------------------------------------------------------
//
//   # comment lines (ignored)
//   n <vertex count>
//   <u> <v>          one edge per line, any orientation
//
// UTF-8 text; written edges are normalized (u < v, ascending).

inline Graph load_graph(std::istream& in, const std::string& name = "<graph>") {
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  auto fail = [&](const std::string& what) {
    throw ValidationError(name + " line " + std::to_string(lineno) + ": " +
                          what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag;
      if (!(ls >> tag >> n) || tag != "n" || n < 1)
        fail("expected header 'n <count>'");
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) fail("expected edge '<u> <v>'");
    std::string rest;
    if (ls >> rest) fail("trailing tokens after edge");
    if (u == v) fail("self-loop (" + std::to_string(u) + ")");
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail("vertex id out of range [0, " + std::to_string(n) + ")");
    edges.emplace_back(u, v);
  }
  if (n < 0) throw ValidationError(name + ": missing 'n <count>' header");
  try {
    return Graph::from_edges(n, std::move(edges));
  } catch (const ValidationError& e) {
    throw ValidationError(name + ": " + e.what());
  }
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  return load_graph(in, path);
}

inline void save_graph(const Graph& g, std::ostream& out,
                       const std::vector<std::string>& header_comments = {}) {
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "n " << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

inline void save_graph(const Graph& g, const std::string& path,
                       const std::vector<std::string>& header_comments = {}) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write graph file: " + path);
  save_graph(g, out, header_comments);
}

}  // namespace ncg
