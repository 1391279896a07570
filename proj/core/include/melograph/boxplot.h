// Five-number summaries with Tukey fences, computed exactly.

#ifndef MELOGRAPH_BOXPLOT_H_
#define MELOGRAPH_BOXPLOT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "melograph/rational.h"

namespace melograph {

struct BoxplotStats {
  std::string label;
  std::size_t n = 0;
  // Absent when n == 0.
  std::optional<Rational> median;
  std::optional<Rational> q1;
  std::optional<Rational> q3;
  std::optional<Rational> iqr;
  std::optional<Rational> whisker_low;   // smallest sample ≥ q1 − 1.5·iqr
  std::optional<Rational> whisker_high;  // largest sample ≤ q3 + 1.5·iqr
  std::vector<Rational> outliers;        // samples beyond the fences, ascending

  friend bool operator==(const BoxplotStats&, const BoxplotStats&) = default;
};

/// Quantile by linear interpolation between closest ranks: with sorted
/// samples x and h = (n−1)·p, x[⌊h⌋] + (h − ⌊h⌋)(x[⌊h⌋+1] − x[⌊h⌋]).
/// `sorted` must be non-empty and ascending; p in [0,1].
Rational interpolated_quantile(std::span<const Rational> sorted, const Rational& p);

BoxplotStats compute_boxplot(std::string label, std::vector<Rational> samples);

}  // namespace melograph

#endif  // MELOGRAPH_BOXPLOT_H_
