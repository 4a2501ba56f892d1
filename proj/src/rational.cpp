#include "qpsum/rational.hpp"

#include "qpsum/error.hpp"

#include <cstdlib>
#include <limits>

namespace qpsum {

namespace {

wide_int gcd128(wide_int a, wide_int b) {
  if (a < 0)
    a = -a;
  if (b < 0)
    b = -b;
  while (b != 0) {
    wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(wide_int v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = reduce(num, den);
}

Rational Rational::reduce(wide_int num, wide_int den) {
  if (den == 0)
    fail(ErrorKind::Domain, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide_int g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den))
    fail(ErrorKind::Numeric, "rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

std::string Rational::to_string() const {
  if (den_ == 1)
    return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return reduce(-wide_int(num_), den_); }

Rational operator+(const Rational &l, const Rational &r) {
  return Rational::reduce(wide_int(l.num_) * r.den_ + wide_int(r.num_) * l.den_,
                          wide_int(l.den_) * r.den_);
}

Rational operator-(const Rational &l, const Rational &r) {
  return Rational::reduce(wide_int(l.num_) * r.den_ - wide_int(r.num_) * l.den_,
                          wide_int(l.den_) * r.den_);
}

Rational operator*(const Rational &l, const Rational &r) {
  return Rational::reduce(wide_int(l.num_) * r.num_, wide_int(l.den_) * r.den_);
}

Rational operator/(const Rational &l, const Rational &r) {
  if (r.num_ == 0)
    fail(ErrorKind::Domain, "rational division by zero");
  return Rational::reduce(wide_int(l.num_) * r.den_, wide_int(l.den_) * r.num_);
}

std::strong_ordering operator<=>(const Rational &l, const Rational &r) {
  wide_int lhs = wide_int(l.num_) * r.den_;
  wide_int rhs = wide_int(r.num_) * l.den_;
  if (lhs < rhs)
    return std::strong_ordering::less;
  if (lhs > rhs)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::parse(const std::string &text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long long v = std::stoll(text, &used);
      if (used != text.size())
        throw std::invalid_argument(text);
      return Rational(v);
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    long long n = std::stoll(num, &used);
    if (used != num.size())
      throw std::invalid_argument(text);
    long long d = std::stoll(den, &used);
    if (used != den.size())
      throw std::invalid_argument(text);
    return Rational(n, d);
  } catch (const Error &) {
    throw;
  } catch (const std::exception &) {
    fail(ErrorKind::Format, "not a rational number: '" + text + "'");
  }
}

} // namespace qpsum
