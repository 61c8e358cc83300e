#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncg/game.hpp"
#include "ncg/graph.hpp"

// Exact absorbing-chain analysis of the round dynamics on small instances.
// The chain lives on all q^n color configurations: proper configurations are
// absorbing, and from a transient configuration every joint redraw of the
// unsatisfied vertices is equally likely (each vertex independently uniform
// over its legal colors).

namespace ncg {

// Configuration ids are mixed-radix: id = sum_i colors[i] * q^i.
inline int64_t encode_state(const ColorAssignment& colors, int q) {
  int64_t id = 0;
  for (int i = static_cast<int>(colors.size()) - 1; i >= 0; --i)
    id = id * q + colors[i];
  return id;
}

inline ColorAssignment decode_state(int64_t id, int n, int q) {
  ColorAssignment colors(n);
  for (int i = 0; i < n; ++i) {
    colors[i] = static_cast<int>(id % q);
    id /= q;
  }
  return colors;
}

struct StateSpace {
  int n = 0;
  int q = 0;
  int64_t size = 0;                // q^n
  std::vector<uint8_t> absorbing;  // per state id: is the configuration proper
};

struct CanonicalChain {
  Eigen::MatrixXd Q;  // transient -> transient
  Eigen::MatrixXd R;  // transient -> absorbing
  std::vector<int64_t> transient_ids;  // local row index -> state id
  std::vector<int64_t> absorbing_ids;  // local column index -> state id
  std::vector<int64_t> local_index;    // state id -> index within its block

  int64_t transient_count() const {
    return static_cast<int64_t>(transient_ids.size());
  }
  int64_t absorbing_count() const {
    return static_cast<int64_t>(absorbing_ids.size());
  }
};

namespace detail {
inline int64_t checked_state_count(int n, int q, int64_t cap) {
  int64_t size = 1;
  for (int i = 0; i < n; ++i) {
    if (size > cap / q + 1) {
      size = cap + 1;  // saturate; exact value no longer needed
      break;
    }
    size *= q;
  }
  if (size > cap)
    throw ValidationError("state space q^n = " + std::to_string(q) + "^" +
                          std::to_string(n) + " exceeds the cap of " +
                          std::to_string(cap) + " states");
  return size;
}
}  // namespace detail

inline std::pair<StateSpace, CanonicalChain> build_chain(
    const Graph& g, int q, int64_t cap = 200'000, bool allow_small_q = false) {
  const int n = g.vertex_count();
  check_palette(q, max_degree(g), allow_small_q);
  const int64_t size = detail::checked_state_count(n, q, cap);

  StateSpace space{n, q, size, std::vector<uint8_t>(size, 0)};
  CanonicalChain chain;
  chain.local_index.assign(size, -1);
  for (int64_t s = 0; s < size; ++s) {
    ColorAssignment colors = decode_state(s, n, q);
    if (is_proper(g, colors)) {
      space.absorbing[s] = 1;
      chain.local_index[s] = static_cast<int64_t>(chain.absorbing_ids.size());
      chain.absorbing_ids.push_back(s);
    } else {
      chain.local_index[s] = static_cast<int64_t>(chain.transient_ids.size());
      chain.transient_ids.push_back(s);
    }
  }

  const int64_t t_count = chain.transient_count();
  const int64_t a_count = chain.absorbing_count();
  chain.Q = Eigen::MatrixXd::Zero(t_count, t_count);
  chain.R = Eigen::MatrixXd::Zero(t_count, a_count);

  for (int64_t row = 0; row < t_count; ++row) {
    const int64_t s = chain.transient_ids[row];
    ColorAssignment colors = decode_state(s, n, q);
    std::vector<uint8_t> payoffs = payoff_vector(g, colors);

    std::vector<int> movers;
    std::vector<std::vector<int>> avail;
    for (int v = 0; v < n; ++v) {
      if (payoffs[v]) continue;
      movers.push_back(v);
      avail.push_back(detail::unused_neighbor_colors(g, colors, q, v));
      if (avail.back().empty())
        throw ValidationError("vertex " + std::to_string(v) +
                              " has no legal color (palette too small)");
    }

    double outcomes = 1.0;
    for (const auto& a : avail) outcomes *= static_cast<double>(a.size());
    const double prob = 1.0 / outcomes;

    // Odometer over the movers' legal colors.
    std::vector<size_t> pick(movers.size(), 0);
    ColorAssignment target = colors;
    for (;;) {
      for (size_t k = 0; k < movers.size(); ++k)
        target[movers[k]] = avail[k][pick[k]];
      const int64_t t = encode_state(target, q);
      if (space.absorbing[t])
        chain.R(row, chain.local_index[t]) += prob;
      else
        chain.Q(row, chain.local_index[t]) += prob;

      size_t k = 0;
      while (k < pick.size() && ++pick[k] == avail[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }

  // Probability conservation per transient row.
  for (int64_t row = 0; row < t_count; ++row) {
    double sum = chain.Q.row(row).sum() + chain.R.row(row).sum();
    if (std::abs(sum - 1.0) > 1e-12)
      throw InternalError("transition row " + std::to_string(row) +
                          " sums to " + std::to_string(sum));
  }
  return {std::move(space), std::move(chain)};
}

// N = (I - Q)^{-1} by dense LU with partial pivoting. Verified against the
// residual N(I - Q) = I at 1e-10 and clamped to nonnegative entries.
inline Eigen::MatrixXd fundamental_matrix(const CanonicalChain& chain) {
  const int64_t t = chain.transient_count();
  if (t == 0) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(t, t) - chain.Q;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::MatrixXd N = lu.solve(Eigen::MatrixXd::Identity(t, t));
  double residual = (N * A - Eigen::MatrixXd::Identity(t, t))
                        .cwiseAbs()
                        .maxCoeff();
  if (!(residual <= 1e-10))
    throw InternalError("fundamental matrix residual " +
                        std::to_string(residual) +
                        " exceeds 1e-10 (malformed chain?)");
  if (N.minCoeff() < -1e-12)
    throw InternalError("fundamental matrix has negative entries");
  return N.cwiseMax(0.0);
}

// Expected steps to absorption per transient state: the row sums of N.
inline Eigen::VectorXd expected_absorption(const Eigen::MatrixXd& N) {
  if (N.rows() == 0) return Eigen::VectorXd(0);
  return N.rowwise().sum();
}

struct AbsorptionSummary {
  Eigen::VectorXd expected_steps;
  Eigen::VectorXd second_moment;
  Eigen::VectorXd variance;
};

// Second moment by first-step analysis: E[X^2] = (2N - I) n, so the variance
// is (2N - I) n - n^2 elementwise. Tiny negative values (roundoff) clamp to 0.
inline AbsorptionSummary absorption_variance(const Eigen::MatrixXd& N,
                                             const Eigen::VectorXd& steps) {
  if (N.rows() != N.cols() || N.rows() != steps.size())
    throw ValidationError("absorption_variance: dimension mismatch");
  AbsorptionSummary out;
  out.expected_steps = steps;
  if (steps.size() == 0) {
    out.second_moment = Eigen::VectorXd(0);
    out.variance = Eigen::VectorXd(0);
    return out;
  }
  out.second_moment = 2.0 * (N * steps) - steps;
  out.variance = out.second_moment - steps.cwiseProduct(steps);
  if (out.variance.minCoeff() < -1e-9)
    throw InternalError("negative absorption variance beyond tolerance");
  out.variance = out.variance.cwiseMax(0.0);
  return out;
}

struct LimitCheckPoint {
  int64_t t;
  double max_entry;          // max entry of Q^t
  double min_absorbed_mass;  // min over transient rows of 1 - rowsum(Q^t)
};

struct LimitCheckReport {
  bool decayed = false;  // max entry < 1e-8 and absorbed mass >= 1 - 1e-8
  int64_t t_max = 0;
  std::vector<LimitCheckPoint> curve;  // doubling powers, then exactly t_max
};

// Powers Q^t for doubling t, then the exact power t_max; reports the decay of
// the transient mass. Non-decay is reported, not thrown: with a correctly
// built chain it signals a bug upstream.
inline LimitCheckReport limit_distribution_check(const CanonicalChain& chain,
                                                 int64_t t_max = 200) {
  if (t_max < 1) throw ValidationError("limit check requires t_max >= 1");
  LimitCheckReport report;
  report.t_max = t_max;
  const int64_t t_count = chain.transient_count();
  if (t_count == 0) {
    report.decayed = true;  // nothing transient to decay
    return report;
  }

  auto summarize = [&](int64_t t, const Eigen::MatrixXd& M) {
    report.curve.push_back(
        {t, M.cwiseAbs().maxCoeff(), 1.0 - M.rowwise().sum().maxCoeff()});
  };

  // Binary exponentiation; the squares double t and land the exact t_max.
  Eigen::MatrixXd base = chain.Q;
  Eigen::MatrixXd acc;
  bool acc_set = false;
  int64_t bit_t = 1;
  int64_t remaining = t_max;
  summarize(1, base);
  while (true) {
    if (remaining & 1) {
      acc = acc_set ? Eigen::MatrixXd(acc * base) : base;
      acc_set = true;
    }
    remaining >>= 1;
    if (remaining == 0) break;
    base = base * base;
    bit_t *= 2;
    summarize(bit_t, base);
  }
  if (report.curve.back().t != t_max) summarize(t_max, acc);

  const auto& last = report.curve.back();
  report.decayed =
      last.max_entry < 1e-8 && last.min_absorbed_mass >= 1.0 - 1e-8;
  return report;
}

// Project each configuration to its satisfied-vertex set and verify that no
// positive-probability transition shrinks that set.
inline bool payoff_projection_monotone(const Graph& g,
                                       const StateSpace& space,
                                       const CanonicalChain& chain) {
  if (space.n > 62)
    throw ValidationError("payoff projection limited to n <= 62");
  auto mask_of = [&](int64_t id) {
    ColorAssignment colors = decode_state(id, space.n, space.q);
    std::vector<uint8_t> payoffs = payoff_vector(g, colors);
    uint64_t mask = 0;
    for (int v = 0; v < space.n; ++v)
      if (payoffs[v]) mask |= (uint64_t{1} << v);
    return mask;
  };
  std::vector<uint64_t> masks(chain.transient_count());
  for (int64_t i = 0; i < chain.transient_count(); ++i)
    masks[i] = mask_of(chain.transient_ids[i]);
  for (int64_t row = 0; row < chain.transient_count(); ++row) {
    for (int64_t col = 0; col < chain.transient_count(); ++col) {
      if (chain.Q(row, col) <= 0.0) continue;
      if ((masks[row] & ~masks[col]) != 0) return false;
    }
    // Absorbing targets have the all-ones payoff set; nothing can shrink.
  }
  return true;
}

}  // namespace ncg
