#include "melograph/distribution.h"

#include <algorithm>
#include <sstream>

namespace melograph {
namespace {

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::optional<std::size_t> index_of(const std::vector<std::string>& labels, std::string_view label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

DistributionMatrix DistributionMatrix::zeros(std::string name, std::vector<std::string> rows,
                                             std::vector<std::string> cols) {
  DistributionMatrix m;
  m.name = std::move(name);
  m.counts.assign(rows.size(), std::vector<std::int64_t>(cols.size(), 0));
  m.row_labels = std::move(rows);
  m.col_labels = std::move(cols);
  return m;
}

std::optional<std::size_t> DistributionMatrix::row_index(std::string_view label) const {
  return index_of(row_labels, label);
}

std::optional<std::size_t> DistributionMatrix::col_index(std::string_view label) const {
  return index_of(col_labels, label);
}

std::int64_t DistributionMatrix::at(std::string_view row, std::string_view col) const {
  const auto r = row_index(row);
  const auto c = col_index(col);
  return r && c ? counts[*r][*c] : 0;
}

std::int64_t DistributionMatrix::total() const noexcept {
  std::int64_t sum = 0;
  for (const auto& row : counts) {
    for (std::int64_t v : row) sum += v;
  }
  return sum;
}

std::string DistributionMatrix::to_csv() const {
  std::ostringstream os;
  os << csv_field(name.empty() ? "row" : name);
  for (const auto& c : col_labels) os << ',' << csv_field(c);
  os << '\n';
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    os << csv_field(row_labels[r]);
    for (std::int64_t v : counts[r]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace melograph
