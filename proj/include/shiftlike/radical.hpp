#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shiftlike/rational.hpp"

namespace shiftlike {

/// Exact real number of the form sum_j a_j * r_j^(1/q), with rational a_j, positive
/// rational radicands r_j and a single root index q shared by all terms.
///
/// Terms whose radicands differ by a perfect q-th power are merged, so the remaining
/// radicals are linearly independent over Q and the value is zero iff no terms remain.
/// Values with q = 0 carry no radicals and combine with any q.
class RadicalValue {
 public:
  RadicalValue() = default;
  RadicalValue(const Rational& value);  // NOLINT(google-explicit-constructor)
  RadicalValue(long value) : RadicalValue(Rational(value)) {}  // NOLINT(google-explicit-constructor)

  /// r^(1/q) for r > 0, q >= 1.
  static RadicalValue root(const Rational& r, unsigned long q);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const;
  /// Precondition: is_rational().
  Rational rational() const;
  unsigned long root_index() const noexcept { return q_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  /// |x|^p, exact. Throws InexactError for several terms or when q does not divide p.
  Rational abs_pow(unsigned long p) const;
  double to_double() const;
  std::string to_string() const;

  RadicalValue operator-() const;
  RadicalValue& operator+=(const RadicalValue& o);
  RadicalValue& operator-=(const RadicalValue& o) { return *this += -o; }
  RadicalValue& operator*=(const RadicalValue& o);
  /// Division by a single-term value.
  RadicalValue& operator/=(const RadicalValue& o);

  friend RadicalValue operator+(RadicalValue a, const RadicalValue& b) { return a += b; }
  friend RadicalValue operator-(RadicalValue a, const RadicalValue& b) { return a -= b; }
  friend RadicalValue operator*(RadicalValue a, const RadicalValue& b) { return a *= b; }
  friend RadicalValue operator/(RadicalValue a, const RadicalValue& b) { return a /= b; }
  friend bool operator==(const RadicalValue& a, const RadicalValue& b) { return (a - b).is_zero(); }

 private:
  struct Term {
    Rational coef;
    Rational radicand;  // 1 for the rational part
  };
  void add_term(Rational coef, Rational radicand);
  unsigned long unify(const RadicalValue& o) const;

  unsigned long q_ = 0;
  std::vector<Term> terms_;
};

}  // namespace shiftlike
