// Exact rational numbers for musical time (quarter-note units).

#ifndef MELOGRAPH_RATIONAL_H_
#define MELOGRAPH_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace melograph {

/// A rational number kept in lowest terms with a positive denominator.
///
/// Intermediate products are evaluated in 128-bit arithmetic; a result whose
/// reduced form does not fit in 64 bits raises RangeError.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT: implicit from integers
  Rational(std::int64_t numerator, std::int64_t denominator);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }

  /// Largest integer not greater than the value.
  std::int64_t floor() const noexcept;

  Rational abs() const noexcept { return num_ < 0 ? Rational(-num_, den_) : *this; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& value) { return Rational(-value.num_, value.den_); }

  friend bool operator==(const Rational& lhs, const Rational& rhs) noexcept {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept;

  /// "n" for integers, otherwise "n/d".
  std::string to_string() const;

  /// Accepts "n", "n/d" and finite decimals such as "0.375" (converted exactly).
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// Fixed-point rendering, e.g. to_fixed(Rational(3, 4), 4) == "0.7500".
std::string to_fixed(const Rational& value, int decimals);
std::string to_fixed(double value, int decimals);

}  // namespace melograph

#endif  // MELOGRAPH_RATIONAL_H_
