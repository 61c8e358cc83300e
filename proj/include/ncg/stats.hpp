#pragma once

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ncg/errors.hpp"

namespace ncg {

template <class Seq>
double mean(const Seq& xs) {
  if (xs.empty()) throw ValidationError("mean of empty sample");
  double s = 0.0;
  for (auto x : xs) s += static_cast<double>(x);
  return s / static_cast<double>(xs.size());
}

// Unbiased sample variance (n - 1 denominator).
template <class Seq>
double sample_variance(const Seq& xs) {
  if (xs.size() < 2) throw ValidationError("variance needs >= 2 samples");
  const double m = mean(xs);
  double s2 = 0.0;
  for (auto x : xs) {
    const double d = static_cast<double>(x) - m;
    s2 += d * d;
  }
  return s2 / static_cast<double>(xs.size() - 1);
}

template <class Seq>
double stderr_of_mean(const Seq& xs) {
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

// Large-sample standard error of the sample variance,
// sqrt((m4 - s^4) / n) with m4 the central fourth moment.
template <class Seq>
double stderr_of_variance(const Seq& xs) {
  if (xs.size() < 2) throw ValidationError("variance needs >= 2 samples");
  const double m = mean(xs);
  const double s2 = sample_variance(xs);
  double m4 = 0.0;
  for (auto x : xs) {
    const double d = static_cast<double>(x) - m;
    m4 += d * d * d * d;
  }
  m4 /= static_cast<double>(xs.size());
  return std::sqrt(std::max(0.0, m4 - s2 * s2) /
                   static_cast<double>(xs.size()));
}

// Nearest-rank empirical quantile: the ceil(p*n)-th smallest value, p in (0,1].
template <class Seq>
double quantile(Seq xs, double p) {
  if (xs.empty()) throw ValidationError("quantile of empty sample");
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("quantile level outside (0,1]");
  std::sort(xs.begin(), xs.end());
  auto rank = static_cast<size_t>(
      std::ceil(p * static_cast<double>(xs.size())));
  rank = std::min(std::max<size_t>(rank, 1), xs.size());
  return static_cast<double>(xs[rank - 1]);
}

inline double binomial_stderr(double p_hat, double n) {
  return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / n);
}

// Pearson chi-square goodness-of-fit p-value against (unnormalized) weights;
// dof = cells - 1. Upper tail via the regularized incomplete gamma.
inline double chi_square_pvalue(const std::vector<int64_t>& counts,
                                const std::vector<double>& weights) {
  if (counts.size() != weights.size() || counts.size() < 2)
    throw ValidationError("chi-square needs >= 2 matching cells");
  double total_count = 0.0, total_weight = 0.0;
  for (int64_t c : counts) total_count += static_cast<double>(c);
  for (double w : weights) {
    if (w <= 0.0) throw ValidationError("chi-square weights must be positive");
    total_weight += w;
  }
  if (total_count <= 0.0) throw ValidationError("chi-square with no samples");
  double stat = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    const double expected = total_count * weights[i] / total_weight;
    const double d = static_cast<double>(counts[i]) - expected;
    stat += d * d / expected;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

inline double chi_square_uniform_pvalue(const std::vector<int64_t>& counts) {
  return chi_square_pvalue(counts, std::vector<double>(counts.size(), 1.0));
}

}  // namespace ncg
