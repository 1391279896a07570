#include "melograph/boxplot.h"

#include <algorithm>

#include "melograph/error.h"

namespace melograph {

Rational interpolated_quantile(std::span<const Rational> sorted, const Rational& p) {
  if (sorted.empty()) throw RangeError("quantile of an empty sample");
  if (p < Rational(0) || p > Rational(1)) throw RangeError("quantile probability outside [0,1]");
  const Rational h = Rational(static_cast<std::int64_t>(sorted.size() - 1)) * p;
  const auto lo = static_cast<std::size_t>(h.floor());
  const Rational fraction = h - Rational(static_cast<std::int64_t>(lo));
  if (fraction.is_zero()) return sorted[lo];
  return sorted[lo] + fraction * (sorted[lo + 1] - sorted[lo]);
}

BoxplotStats compute_boxplot(std::string label, std::vector<Rational> samples) {
  BoxplotStats stats;
  stats.label = std::move(label);
  stats.n = samples.size();
  if (samples.empty()) return stats;

  std::sort(samples.begin(), samples.end());
  stats.q1 = interpolated_quantile(samples, Rational(1, 4));
  stats.median = interpolated_quantile(samples, Rational(1, 2));
  stats.q3 = interpolated_quantile(samples, Rational(3, 4));
  stats.iqr = *stats.q3 - *stats.q1;

  const Rational reach = Rational(3, 2) * *stats.iqr;
  const Rational low_fence = *stats.q1 - reach;
  const Rational high_fence = *stats.q3 + reach;
  for (const Rational& x : samples) {
    if (x < low_fence || x > high_fence) {
      stats.outliers.push_back(x);
      continue;
    }
    if (!stats.whisker_low || x < *stats.whisker_low) stats.whisker_low = x;
    if (!stats.whisker_high || x > *stats.whisker_high) stats.whisker_high = x;
  }
  return stats;
}

}  // namespace melograph
