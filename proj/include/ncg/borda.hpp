#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ncg/graph.hpp"
#include "ncg/rng.hpp"

// Post-resolution scoring machinery: strict per-vertex preference lists over
// the palette, the total-points welfare function, per-vertex available-color
// lists, and the cascading removal of vertices already holding their best
// remaining color.

namespace ncg {

// Row i is vertex i's colors in descending preference; the color at index k
// is worth q - 1 - k points.
using PreferenceProfile = std::vector<std::vector<int>>;

// Per remaining vertex: the prefix of its preference list down to its current
// color, minus colors permanently claimed by departed neighbors. The current
// color is always the last element.
using AvailableColorLists = std::vector<std::vector<int>>;

inline void validate_profile(const PreferenceProfile& prefs, int n, int q) {
  if (static_cast<int>(prefs.size()) != n)
    throw ValidationError("preference profile must have one row per vertex");
  std::vector<uint8_t> seen;
  for (const auto& row : prefs) {
    if (static_cast<int>(row.size()) != q)
      throw ValidationError("preference row must list all " +
                            std::to_string(q) + " colors");
    seen.assign(q, 0);
    for (int c : row) {
      if (c < 0 || c >= q || seen[c])
        throw ValidationError("preference row is not a permutation of 0.." +
                              std::to_string(q - 1));
      seen[c] = 1;
    }
  }
}

inline PreferenceProfile random_profile(int n, int q, uint64_t seed) {
  PreferenceProfile prefs(n, std::vector<int>(q));
  for (int i = 0; i < n; ++i) {
    std::iota(prefs[i].begin(), prefs[i].end(), 0);
    SplitMix64 rng = substream(seed, i);
    for (int k = q - 1; k > 0; --k)
      std::swap(prefs[i][k], prefs[i][rng.below(k + 1)]);
  }
  return prefs;
}

// Index of `color` in a preference row (0 = most preferred).
inline int color_rank(const std::vector<int>& pref_row, int color) {
  for (size_t k = 0; k < pref_row.size(); ++k)
    if (pref_row[k] == color) return static_cast<int>(k);
  throw ValidationError("color " + std::to_string(color) +
                        " missing from preference list");
}

// Total points: (q - 1) n - sum of held-color ranks. Max (q - 1) n when
// everyone holds their top color.
inline long long borda_welfare(int q, const PreferenceProfile& prefs,
                               const ColorAssignment& colors) {
  if (prefs.size() != colors.size())
    throw ValidationError("profile and assignment sizes differ");
  long long rank_sum = 0;
  for (size_t i = 0; i < colors.size(); ++i)
    rank_sum += color_rank(prefs[i], colors[i]);
  return static_cast<long long>(q - 1) * static_cast<long long>(colors.size()) -
         rank_sum;
}

// Vertex i's list = prefs[i][0..k] inclusive, where prefs[i][k] == colors[i].
inline AvailableColorLists available_colors(const PreferenceProfile& prefs,
                                            const ColorAssignment& colors) {
  if (prefs.size() != colors.size())
    throw ValidationError("profile and assignment sizes differ");
  AvailableColorLists lists(colors.size());
  for (size_t i = 0; i < colors.size(); ++i) {
    const int k = color_rank(prefs[i], colors[i]);
    lists[i].assign(prefs[i].begin(), prefs[i].begin() + k + 1);
  }
  return lists;
}

// After a recoloring, each list shrinks to end at the new current color;
// deletions made by earlier departures are preserved because the new current
// color was drawn from the already-filtered list.
inline AvailableColorLists truncate_at_current(const AvailableColorLists& lists,
                                               const ColorAssignment& colors) {
  if (lists.size() != colors.size())
    throw ValidationError("lists and assignment sizes differ");
  AvailableColorLists out(lists.size());
  for (size_t i = 0; i < lists.size(); ++i) {
    auto it = std::find(lists[i].begin(), lists[i].end(), colors[i]);
    if (it == lists[i].end())
      throw ValidationError("current color of vertex " + std::to_string(i) +
                            " missing from its available list");
    out[i].assign(lists[i].begin(), it + 1);
  }
  return out;
}

struct ReductionOutcome {
  Graph graph;
  PreferenceProfile prefs;
  ColorAssignment coloring;
  AvailableColorLists avail;
  std::vector<int> orig_ids;   // reduced index -> original vertex id
  long long payoff_gained = 0; // points banked by this invocation's quitters
  std::vector<int> quitters;   // original ids in departure order
  std::vector<int> quitter_colors;  // frozen color per quitter, same order
};

// Cascading removal: a vertex departs when the head of its available list is
// its current color; departure deletes that color from every remaining
// neighbor's list, which can trigger further departures within the same
// invocation. Scan order is ascending index, repeated to a fixed point.
inline ReductionOutcome reduce_network(const Graph& g,
                                       const PreferenceProfile& prefs,
                                       const ColorAssignment& colors,
                                       const AvailableColorLists& avail,
                                       std::vector<int> orig_ids = {}) {
  const int n = g.vertex_count();
  if (n == 0) return ReductionOutcome{};
  if (prefs.empty())
    throw ValidationError("empty preference profile");
  const int q = static_cast<int>(prefs.at(0).size());
  validate_profile(prefs, n, q);
  validate_assignment(g, colors, q);
  if (!is_proper(g, colors))
    throw ValidationError("reduction requires a proper coloring");
  if (static_cast<int>(avail.size()) != n)
    throw ValidationError("available lists must cover every vertex");
  for (int i = 0; i < n; ++i)
    if (avail[i].empty() || avail[i].back() != colors[i])
      throw ValidationError(
          "available list of vertex " + std::to_string(i) +
          " must end at its current color");
  if (orig_ids.empty()) {
    orig_ids.resize(n);
    std::iota(orig_ids.begin(), orig_ids.end(), 0);
  } else if (static_cast<int>(orig_ids.size()) != n) {
    throw ValidationError("orig_ids must cover every vertex");
  }

  AvailableColorLists lists = avail;
  std::vector<uint8_t> alive(n, 1);
  ReductionOutcome out;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!alive[i] || lists[i].front() != colors[i]) continue;
      out.payoff_gained += q - 1 - color_rank(prefs[i], colors[i]);
      out.quitters.push_back(orig_ids[i]);
      out.quitter_colors.push_back(colors[i]);
      alive[i] = 0;
      changed = true;
      for (int j : g.neighbors(i)) {
        if (!alive[j]) continue;
        auto it = std::find(lists[j].begin(), lists[j].end(), colors[i]);
        if (it != lists[j].end()) lists[j].erase(it);
        if (lists[j].empty())
          throw InternalError("available list of vertex " +
                              std::to_string(j) + " emptied by reduction");
      }
    }
  }

  // Compact survivors, ascending original order.
  std::vector<int> new_index(n, -1);
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (alive[i]) new_index[i] = m++;
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (alive[u] && alive[v]) edges.emplace_back(new_index[u], new_index[v]);
  out.graph = m > 0 ? Graph::from_edges(m, std::move(edges)) : Graph();
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    out.prefs.push_back(prefs[i]);
    out.coloring.push_back(colors[i]);
    out.avail.push_back(lists[i]);
    out.orig_ids.push_back(orig_ids[i]);
  }
  return out;
}

// --- preference / coloring file formats -------------------------------------
//
// Preferences: CSV, one row per vertex, entries a permutation of 0..q-1.
// Coloring:    header "q <palette size>", then one color per line.
// '#' lines are ignored in both.

inline PreferenceProfile load_profile(std::istream& in,
                                      const std::string& name = "<prefs>") {
  PreferenceProfile prefs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<int> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stoi(cell));
      } catch (...) {
        throw ValidationError(name + " line " + std::to_string(lineno) +
                              ": bad integer '" + cell + "'");
      }
    }
    if (row.empty())
      throw ValidationError(name + " line " + std::to_string(lineno) +
                            ": empty row");
    prefs.push_back(std::move(row));
  }
  if (prefs.empty()) throw ValidationError(name + ": no preference rows");
  validate_profile(prefs, static_cast<int>(prefs.size()),
                   static_cast<int>(prefs[0].size()));
  return prefs;
}

inline PreferenceProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open preference file: " + path);
  return load_profile(in, path);
}

inline void save_profile(const PreferenceProfile& prefs, std::ostream& out,
                         const std::vector<std::string>& header_comments = {}) {
  for (const auto& c : header_comments) out << "# " << c << "\n";
  for (const auto& row : prefs) {
    for (size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << row[k];
    out << "\n";
  }
}

inline void save_profile(const PreferenceProfile& prefs,
                         const std::string& path,
                         const std::vector<std::string>& header_comments = {}) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write preference file: " + path);
  save_profile(prefs, out, header_comments);
}

inline std::pair<ColorAssignment, int> load_coloring(
    std::istream& in, const std::string& name = "<coloring>") {
  ColorAssignment colors;
  int q = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (q < 0) {
      std::string tag;
      if (!(ls >> tag >> q) || tag != "q" || q < 1)
        throw ValidationError(name + " line " + std::to_string(lineno) +
                              ": expected header 'q <palette size>'");
      continue;
    }
    int c;
    if (!(ls >> c) || c < 0 || c >= q)
      throw ValidationError(name + " line " + std::to_string(lineno) +
                            ": bad color");
    colors.push_back(c);
  }
  if (q < 0) throw ValidationError(name + ": missing 'q <size>' header");
  return {colors, q};
}

inline std::pair<ColorAssignment, int> load_coloring(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open coloring file: " + path);
  return load_coloring(in, path);
}

inline void save_coloring(const ColorAssignment& colors, int q,
                          std::ostream& out,
                          const std::vector<std::string>& header_comments = {}) {
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "q " << q << "\n";
  for (int c : colors) out << c << "\n";
}

inline void save_coloring(const ColorAssignment& colors, int q,
                          const std::string& path,
                          const std::vector<std::string>& header_comments = {}) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write coloring file: " + path);
  save_coloring(colors, q, out, header_comments);
}

}  // namespace ncg
