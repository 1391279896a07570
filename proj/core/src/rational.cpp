#include "melograph/rational.h"

#include <charconv>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "melograph/error.h"

namespace melograph {
namespace {

// 128-bit intermediates for products of two 64-bit terms.
__extension__ typedef __int128 Wide;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw RangeError("invalid rational literal '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw RangeError("rational with zero denominator");
  if (denominator < 0) {
    if (numerator == std::numeric_limits<std::int64_t>::min() ||
        denominator == std::numeric_limits<std::int64_t>::min()) {
      throw RangeError("rational overflow");
    }
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

static Rational from_wide(Wide numerator, Wide denominator) {
  if (denominator == 0) throw RangeError("division by zero in rational arithmetic");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const Wide g = wide_gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (!fits(numerator) || !fits(denominator)) {
    throw RangeError("rational overflow");
  }
  return Rational(static_cast<std::int64_t>(numerator), static_cast<std::int64_t>(denominator));
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = from_wide(static_cast<Wide>(num_) * rhs.den_ + static_cast<Wide>(rhs.num_) * den_,
                    static_cast<Wide>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = from_wide(static_cast<Wide>(num_) * rhs.den_ - static_cast<Wide>(rhs.num_) * den_,
                    static_cast<Wide>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<Wide>(num_) * rhs.num_, static_cast<Wide>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw RangeError("division by zero in rational arithmetic");
  *this = from_wide(static_cast<Wide>(num_) * rhs.den_, static_cast<Wide>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept {
  const Wide a = static_cast<Wide>(lhs.num_) * rhs.den_;
  const Wide b = static_cast<Wide>(rhs.num_) * lhs.den_;
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw RangeError("empty rational literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), whole), parse_int(text.substr(slash + 1), whole));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const bool negative = text.front() == '-';
    std::string_view int_part = text.substr(0, dot);
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    const std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 18) throw RangeError("too many decimals in '" + std::string(whole) + "'");
    const std::int64_t whole_units = int_part.empty() ? 0 : parse_int(int_part, whole);
    const std::int64_t frac_units = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    if (whole_units < 0 || frac_units < 0) throw RangeError("invalid rational literal '" + std::string(whole) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Rational value = Rational(whole_units) + Rational(frac_units, scale);
    return negative ? -value : value;
  }
  return Rational(parse_int(text, whole));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.to_string();
}

std::string to_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

// Exact decimal rendering; ties round away from zero.
std::string to_fixed(const Rational& value, int decimals) {
  if (decimals < 0 || decimals > 18) return to_fixed(value.to_double(), decimals);
  Wide scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool negative = value.num() < 0;
  const Wide magnitude = negative ? -static_cast<Wide>(value.num()) : static_cast<Wide>(value.num());
  const Wide scaled = magnitude * scale;
  Wide units = scaled / value.den();
  if (2 * (scaled % value.den()) >= value.den()) ++units;

  const auto whole = static_cast<std::uint64_t>(units / scale);
  auto fraction = static_cast<std::uint64_t>(units % scale);
  std::string out = (negative && units != 0 ? "-" : "") + std::to_string(whole);
  if (decimals > 0) {
    std::string digits(static_cast<std::size_t>(decimals), '0');
    for (auto i = static_cast<std::size_t>(decimals); i-- > 0; fraction /= 10) {
      digits[i] = static_cast<char>('0' + fraction % 10);
    }
    out += "." + digits;
  }
  return out;
}

}  // namespace melograph
