#pragma once

#include <gmpxx.h>

#include <concepts>
#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace slecoset {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Every symbolic quantity of the library (levels, central charges,
/// conformal weights, SLE parameters, module coefficients) is a Rational.
/// Floating point never enters the symbolic side.
class Rational {
public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) : value_(static_cast<long>(n)) {}

  Rational(long num, long den);
  explicit Rational(mpq_class v);

  /// Parses "p", "p/q", or a finite decimal such as "-0.125" exactly.
  /// Throws InvalidArgument on malformed input or a zero denominator.
  static Rational parse(std::string_view text);

  /// "num/den", or "num" when the denominator is 1.
  std::string str() const;
  double to_double() const { return value_.get_d(); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  mpq_class value_;
};

Rational abs(const Rational& r);
Rational pow(const Rational& r, int exponent);

}  // namespace slecoset

template <>
struct std::hash<slecoset::Rational> {
  std::size_t operator()(const slecoset::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
