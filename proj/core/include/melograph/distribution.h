// Labelled two-dimensional count matrix.

#ifndef MELOGRAPH_DISTRIBUTION_H_
#define MELOGRAPH_DISTRIBUTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace melograph {

struct DistributionMatrix {
  std::string name;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::int64_t>> counts;  // counts[row][col] ≥ 0

  static DistributionMatrix zeros(std::string name, std::vector<std::string> rows, std::vector<std::string> cols);

  std::optional<std::size_t> row_index(std::string_view label) const;
  std::optional<std::size_t> col_index(std::string_view label) const;

  /// Count at (row label, col label); 0 when either label is absent.
  std::int64_t at(std::string_view row, std::string_view col) const;

  std::int64_t total() const noexcept;
  bool empty() const noexcept { return row_labels.empty() || col_labels.empty(); }

  /// Header "<name>,<col...>" then one line per row. LF line endings.
  std::string to_csv() const;

  friend bool operator==(const DistributionMatrix&, const DistributionMatrix&) = default;
};

}  // namespace melograph

#endif  // MELOGRAPH_DISTRIBUTION_H_
