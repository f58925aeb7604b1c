#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "shiftlike/rational.hpp"

namespace shiftlike {

/// Two-sided eventually periodic sequence of positive rationals.
///
/// The core occupies indices [k_min, k_max] (k_max = k_min + core.size() - 1, so an
/// empty core has k_max = k_min - 1). Below k_min the left period repeats, aligned so
/// that indices k_min - L .. k_min - 1 read left[0..L-1]. Above k_max the right period
/// repeats starting with right[0] at k_max + 1.
class PeriodicSequence {
 public:
  PeriodicSequence(std::int64_t k_min, std::vector<Rational> core, std::vector<Rational> left_period,
                   std::vector<Rational> right_period);

  static PeriodicSequence constant(const Rational& value);

  /// Builds the sequence from a function that is known to be periodic with period
  /// `left_len` below `k_min` and with period `right_len` above `k_max`.
  static PeriodicSequence sample(std::int64_t k_min, std::int64_t k_max, std::size_t left_len,
                                 std::size_t right_len,
                                 const std::function<Rational(std::int64_t)>& f);

  const Rational& operator[](std::int64_t k) const;

  std::int64_t k_min() const noexcept { return k_min_; }
  std::int64_t k_max() const noexcept { return k_min_ + static_cast<std::int64_t>(core_.size()) - 1; }
  const std::vector<Rational>& core() const noexcept { return core_; }
  const std::vector<Rational>& left_period() const noexcept { return left_; }
  const std::vector<Rational>& right_period() const noexcept { return right_; }

  Rational left_product() const;
  Rational right_product() const;
  Rational min_value() const;
  Rational max_value() const;

  /// Product of entries over the inclusive range [lo, hi]; 1 when hi < lo.
  /// Full tail periods are folded into a single power.
  Rational product(std::int64_t lo, std::int64_t hi) const;

  /// P(k) = s_1 ... s_k for k > 0, 1 for k = 0, 1 / (s_{k+1} ... s_0) for k < 0,
  /// so that P(k) / P(k-1) = s_k for every k.
  Rational anchored_product(std::int64_t k) const;

  PeriodicSequence reciprocal() const;
  PeriodicSequence scaled(const Rational& factor) const;

  /// Sequence equality: compares values, not representations.
  friend bool operator==(const PeriodicSequence& a, const PeriodicSequence& b);

 private:
  std::int64_t k_min_;
  std::vector<Rational> core_;
  std::vector<Rational> left_;
  std::vector<Rational> right_;
};

std::int64_t floor_mod(std::int64_t a, std::int64_t m);
std::size_t lcm_size(std::size_t a, std::size_t b);

}  // namespace shiftlike
