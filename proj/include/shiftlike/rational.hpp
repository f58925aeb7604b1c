#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace shiftlike {

using Rational = mpq_class;

/// Parses "n", "-n" or "n/d" (decimal integers, d != 0). No decimal points, no exponents.
Rational parse_rational(std::string_view text);

/// Canonical "n" or "n/d" form; round-trips through parse_rational.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// base^exponent for any integer exponent (base != 0 when exponent < 0).
Rational pow(const Rational& base, std::int64_t exponent);

/// Exact q-th root of a nonnegative rational, if it is a perfect q-th power.
std::optional<Rational> exact_root(const Rational& value, unsigned long q);

/// The L^p exponent. Stored exactly as a reduced fraction num/den >= 1.
class Exponent {
 public:
  explicit Exponent(Rational p);
  explicit Exponent(long p) : Exponent(Rational(p)) {}

  const Rational& value() const noexcept { return p_; }
  double as_double() const noexcept { return as_double_; }
  bool is_integer() const noexcept { return p_.get_den() == 1; }
  /// Throws InexactError unless p is an integer.
  unsigned long integer() const;
  unsigned long numerator() const { return p_.get_num().get_ui(); }
  unsigned long denominator() const { return p_.get_den().get_ui(); }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.p_ == b.p_; }

 private:
  Rational p_;
  double as_double_;
};

/// x^p vs c^p compared exactly: returns true iff x >= c^p, for x, c > 0.
/// With p = a/b this is x^b >= c^a.
bool at_least_power(const Rational& x, const Rational& c, const Exponent& p);

/// A nonnegative rational or +infinity; sums involving +infinity are +infinity.
class ExtendedRational {
 public:
  ExtendedRational() : value_(Rational(0)) {}
  ExtendedRational(Rational value);  // NOLINT(google-explicit-constructor)
  static ExtendedRational infinity() {
    ExtendedRational r;
    r.value_.reset();
    return r;
  }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  /// Precondition: is_finite().
  const Rational& value() const;

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
  friend ExtendedRational operator*(const ExtendedRational& a, const Rational& scale);
  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::partial_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

  std::string to_string() const { return is_infinite() ? "inf" : shiftlike::to_string(*value_); }

 private:
  std::optional<Rational> value_;
};

}  // namespace shiftlike
