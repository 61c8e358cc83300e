#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ncg/borda.hpp"
#include "ncg/graph.hpp"
#include "ncg/rng.hpp"

// Single-site chain samplers over in-list proper colorings: a uniform
// resampler and an annealed welfare maximizer. Proposals pick a vertex
// uniformly, then a color uniformly from that vertex's available list, so
// forward and reverse proposal probabilities coincide.

namespace ncg {

// standard: accept with min(1, alpha).
// literal:  acceptance additionally scaled by the proposal mass
//           1/(n * |list|) — a lazier kernel with the same stationary law.
enum class AcceptanceMode { standard, literal };

inline AcceptanceMode parse_acceptance_mode(const std::string& s) {
  if (s == "standard") return AcceptanceMode::standard;
  if (s == "literal") return AcceptanceMode::literal;
  throw ValidationError("unknown acceptance mode: " + s);
}

inline const char* to_string(AcceptanceMode m) {
  return m == AcceptanceMode::standard ? "standard" : "literal";
}

struct TemperatureSchedule {
  enum class Kind { log1p, linear, quadratic, constant, geometric };
  Kind kind = Kind::log1p;
  double lambda0 = 1.0;  // constant / geometric base value
  double ratio = 2.0;    // geometric growth per stage, >= 1
  int64_t stage = 1000;  // geometric stage length

  double value(int64_t t) const {
    if (t < 0) throw ValidationError("schedule time must be >= 0");
    switch (kind) {
      case Kind::log1p:
        return std::log1p(static_cast<double>(t));
      case Kind::linear:
        return static_cast<double>(t);
      case Kind::quadratic:
        return static_cast<double>(t) * static_cast<double>(t);
      case Kind::constant:
        return lambda0;
      case Kind::geometric:
        return lambda0 * std::pow(ratio, static_cast<double>(t / stage));
    }
    throw InternalError("unhandled schedule kind");
  }

  void validate() const {
    if (lambda0 < 0.0) throw ValidationError("lambda0 must be >= 0");
    if (kind == Kind::geometric) {
      if (ratio < 1.0) throw ValidationError("geometric ratio must be >= 1");
      if (stage < 1) throw ValidationError("geometric stage must be >= 1");
    }
  }

  static TemperatureSchedule parse(const std::string& name) {
    TemperatureSchedule s;
    if (name == "log1p") s.kind = Kind::log1p;
    else if (name == "linear") s.kind = Kind::linear;
    else if (name == "quadratic") s.kind = Kind::quadratic;
    else if (name == "constant") s.kind = Kind::constant;
    else if (name == "geometric") s.kind = Kind::geometric;
    else throw ValidationError("unknown schedule: " + name);
    return s;
  }

  const char* name() const {
    switch (kind) {
      case Kind::log1p: return "log1p";
      case Kind::linear: return "linear";
      case Kind::quadratic: return "quadratic";
      case Kind::constant: return "constant";
      case Kind::geometric: return "geometric";
    }
    return "?";
  }
};

inline double schedule_value(const TemperatureSchedule& schedule, int64_t t) {
  return schedule.value(t);
}

namespace detail {
inline void validate_sampler_inputs(const Graph& g, const ColorAssignment& l0,
                                    const AvailableColorLists& avail) {
  if (!is_proper(g, l0))
    throw ValidationError("sampler requires a proper starting coloring");
  if (avail.size() != l0.size())
    throw ValidationError("available lists must cover every vertex");
  for (size_t i = 0; i < avail.size(); ++i) {
    if (avail[i].empty())
      throw ValidationError("empty available list for vertex " +
                            std::to_string(i));
    if (std::find(avail[i].begin(), avail[i].end(), l0[i]) == avail[i].end())
      throw ValidationError("available list of vertex " + std::to_string(i) +
                            " misses its current color");
  }
}

// Properness of the single-site change v -> c given the rest of `colors`.
inline bool move_is_proper(const Graph& g, const ColorAssignment& colors,
                           int v, int c) {
  for (int u : g.neighbors(v))
    if (colors[u] == c) return false;
  return true;
}
}  // namespace detail

// m proposal steps toward the uniform law on in-list proper colorings.
// Every visited state stays proper and in-list, so the result's welfare can
// only rise: lists contain nothing below the starting color.
// The observer sees the state after each step.
template <class Observer>
ColorAssignment mh_run_observe(const Graph& g, const ColorAssignment& l0,
                               const AvailableColorLists& avail, int64_t steps,
                               AcceptanceMode mode, uint64_t seed,
                               Observer&& observe) {
  detail::validate_sampler_inputs(g, l0, avail);
  if (steps < 0) throw ValidationError("step count must be >= 0");
  const int n = g.vertex_count();
  if (n == 0) return l0;
  ColorAssignment colors = l0;
  SplitMix64 rng(stream_key(seed));
  for (int64_t step = 0; step < steps; ++step) {
    const int v = static_cast<int>(rng.below(n));
    const auto& list = avail[v];
    const int c = list[rng.below(list.size())];
    const double u = rng.next_double();
    double p_accept =
        detail::move_is_proper(g, colors, v, c) ? 1.0 : 0.0;
    if (mode == AcceptanceMode::literal)
      p_accept /= static_cast<double>(n) * static_cast<double>(list.size());
    if (u < p_accept) colors[v] = c;
    observe(colors);
  }
  return colors;
}

inline ColorAssignment mh_run(const Graph& g, const ColorAssignment& l0,
                              const AvailableColorLists& avail, int64_t steps,
                              AcceptanceMode mode, uint64_t seed) {
  return mh_run_observe(g, l0, avail, steps, mode, seed,
                        [](const ColorAssignment&) {});
}

// Every proper assignment with each vertex inside its available list; the
// sampler's target set. Guarded by a cap on the raw product size.
inline std::vector<ColorAssignment> enumerate_target(
    const Graph& g, const AvailableColorLists& avail,
    int64_t cap = 1'000'000) {
  const int n = g.vertex_count();
  if (static_cast<int>(avail.size()) != n)
    throw ValidationError("available lists must cover every vertex");
  double product = 1.0;
  for (const auto& list : avail) {
    if (list.empty())
      throw ValidationError("empty available list in enumeration");
    product *= static_cast<double>(list.size());
  }
  if (product > static_cast<double>(cap))
    throw ValidationError("target enumeration of ~" +
                          std::to_string(product) +
                          " assignments exceeds the cap of " +
                          std::to_string(cap));
  std::vector<ColorAssignment> out;
  ColorAssignment colors(n);
  std::vector<size_t> pick(n, 0);
  for (;;) {
    for (int i = 0; i < n; ++i) colors[i] = avail[i][pick[i]];
    if (is_proper(g, colors)) out.push_back(colors);
    size_t k = 0;
    while (k < pick.size() && ++pick[k] == avail[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

struct SaTrace {
  std::vector<long long> welfare;  // index t = welfare after step t; [0] start
  std::vector<double> lambda;      // per step
  std::vector<uint8_t> accepted;   // per step
  long long best_welfare = 0;
  ColorAssignment best_assignment;
  int64_t reaching_time = 0;  // first iteration attaining the final maximum
};

// Annealed maximization of the welfare over the in-list proper colorings
// fixed by (prefs, l0): acceptance min(1, exp(lambda_t * dh)) gated on
// properness, with available lists frozen at the start and never reduced.
template <class Observer>
SaTrace sa_run_observe(const Graph& g, const PreferenceProfile& prefs,
                       const ColorAssignment& l0, int q, int64_t steps,
                       const TemperatureSchedule& schedule, AcceptanceMode mode,
                       uint64_t seed, Observer&& observe) {
  const int n = g.vertex_count();
  validate_profile(prefs, n, q);
  validate_assignment(g, l0, q);
  schedule.validate();
  if (steps < 0) throw ValidationError("step count must be >= 0");
  if (n == 0) throw ValidationError("annealing needs at least one vertex");
  const AvailableColorLists avail = available_colors(prefs, l0);
  detail::validate_sampler_inputs(g, l0, avail);

  ColorAssignment colors = l0;
  long long welfare = borda_welfare(q, prefs, colors);
  SaTrace trace;
  trace.welfare.reserve(steps + 1);
  trace.lambda.reserve(steps);
  trace.accepted.reserve(steps);
  trace.welfare.push_back(welfare);
  trace.best_welfare = welfare;
  trace.best_assignment = colors;
  trace.reaching_time = 0;

  SplitMix64 rng(stream_key(seed));
  for (int64_t t = 0; t < steps; ++t) {
    const double lambda = schedule.value(t);
    const int v = static_cast<int>(rng.below(n));
    const auto& list = avail[v];
    const int c = list[rng.below(list.size())];
    const double u = rng.next_double();

    // dh in points; exp(lambda * dh) never overflows: nonnegative dh short-
    // circuits to acceptance 1 and negative dh underflows toward 0.
    const long long dh = color_rank(prefs[v], colors[v]) -
                         color_rank(prefs[v], c);
    double r = 0.0;
    if (detail::move_is_proper(g, colors, v, c))
      r = dh >= 0 ? 1.0 : std::exp(lambda * static_cast<double>(dh));
    double p_accept = r;
    if (mode == AcceptanceMode::literal)
      p_accept /= static_cast<double>(n) * static_cast<double>(list.size());

    const bool take = u < p_accept;
    if (take) {
      colors[v] = c;
      welfare += dh;
    }
    trace.lambda.push_back(lambda);
    trace.accepted.push_back(take ? 1 : 0);
    trace.welfare.push_back(welfare);
    if (welfare > trace.best_welfare) {
      trace.best_welfare = welfare;
      trace.best_assignment = colors;
      trace.reaching_time = t + 1;
    }
    observe(colors);
  }
  return trace;
}

inline SaTrace sa_run(const Graph& g, const PreferenceProfile& prefs,
                      const ColorAssignment& l0, int q, int64_t steps,
                      const TemperatureSchedule& schedule, AcceptanceMode mode,
                      uint64_t seed) {
  return sa_run_observe(g, prefs, l0, q, steps, schedule, mode, seed,
                        [](const ColorAssignment&) {});
}

// Reference results displayed alongside new runs in the schedule comparison
// report; never asserted against.
struct ScheduleReference {
  const char* schedule;
  long long best_welfare;
  long long reaching_time;
};

inline constexpr ScheduleReference k_schedule_references[] = {
    {"log1p", 217, 94156},
    {"linear", 216, 179632},
    {"quadratic", 214, 183118},
};

}  // namespace ncg
