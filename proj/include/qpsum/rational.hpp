#ifndef QPSUM_RATIONAL_HPP
#define QPSUM_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace qpsum {

/// Exact fraction over 64-bit integers, always stored in lowest terms with a
/// positive denominator. Intermediate products use 128-bit arithmetic; a
/// result that does not fit back into 64 bits raises ErrorKind::Numeric.
/// 128-bit intermediate for products of 64-bit numerators and denominators.
__extension__ typedef __int128 wide_int;

class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string to_string() const;

  Rational operator-() const;
  friend Rational operator+(const Rational &l, const Rational &r);
  friend Rational operator-(const Rational &l, const Rational &r);
  friend Rational operator*(const Rational &l, const Rational &r);
  friend Rational operator/(const Rational &l, const Rational &r);
  Rational &operator+=(const Rational &r) { return *this = *this + r; }
  Rational &operator-=(const Rational &r) { return *this = *this - r; }
  Rational &operator*=(const Rational &r) { return *this = *this * r; }
  Rational &operator/=(const Rational &r) { return *this = *this / r; }

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &l,
                                          const Rational &r);

  /// Parses "p/q" or "p".
  static Rational parse(const std::string &text);

private:
  static Rational reduce(wide_int num, wide_int den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace qpsum

#endif
