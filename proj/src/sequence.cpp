#include "shiftlike/sequence.hpp"

#include <algorithm>
#include <numeric>

#include "shiftlike/errors.hpp"

namespace shiftlike {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

namespace {

void require_positive(const std::vector<Rational>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) {
      throw ValidationError("entry " + std::to_string(i) + " must be a positive rational, got " +
                                to_string(values[i]),
                            what);
    }
  }
}

Rational product_of(const std::vector<Rational>& values) {
  Rational r(1);
  for (const auto& v : values) r *= v;
  return r;
}

}  // namespace

PeriodicSequence::PeriodicSequence(std::int64_t k_min, std::vector<Rational> core,
                                   std::vector<Rational> left_period,
                                   std::vector<Rational> right_period)
    : k_min_(k_min), core_(std::move(core)), left_(std::move(left_period)), right_(std::move(right_period)) {
  if (left_.empty()) throw ValidationError("period must be nonempty", "left_period");
  if (right_.empty()) throw ValidationError("period must be nonempty", "right_period");
  require_positive(core_, "core");
  require_positive(left_, "left_period");
  require_positive(right_, "right_period");
  for (auto* v : {&core_, &left_, &right_}) {
    for (auto& x : *v) x.canonicalize();
  }
}

PeriodicSequence PeriodicSequence::constant(const Rational& value) {
  return PeriodicSequence(0, {}, {value}, {value});
}

PeriodicSequence PeriodicSequence::sample(std::int64_t k_min, std::int64_t k_max, std::size_t left_len,
                                          std::size_t right_len,
                                          const std::function<Rational(std::int64_t)>& f) {
  std::vector<Rational> core, left, right;
  for (std::int64_t k = k_min; k <= k_max; ++k) core.push_back(f(k));
  const auto L = static_cast<std::int64_t>(left_len);
  for (std::int64_t j = 0; j < L; ++j) left.push_back(f(k_min - L + j));
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(right_len); ++j) right.push_back(f(k_max + 1 + j));
  return PeriodicSequence(k_min, std::move(core), std::move(left), std::move(right));
}

const Rational& PeriodicSequence::operator[](std::int64_t k) const {
  if (k < k_min_) {
    return left_[static_cast<std::size_t>(floor_mod(k - k_min_, static_cast<std::int64_t>(left_.size())))];
  }
  if (k > k_max()) {
    return right_[static_cast<std::size_t>(floor_mod(k - k_max() - 1, static_cast<std::int64_t>(right_.size())))];
  }
  return core_[static_cast<std::size_t>(k - k_min_)];
}

Rational PeriodicSequence::left_product() const { return product_of(left_); }
Rational PeriodicSequence::right_product() const { return product_of(right_); }

Rational PeriodicSequence::min_value() const {
  Rational m = left_.front();
  for (auto* v : {&core_, &left_, &right_}) {
    for (const auto& x : *v) m = std::min(m, x);
  }
  return m;
}

Rational PeriodicSequence::max_value() const {
  Rational m = left_.front();
  for (auto* v : {&core_, &left_, &right_}) {
    for (const auto& x : *v) m = std::max(m, x);
  }
  return m;
}

Rational PeriodicSequence::product(std::int64_t lo, std::int64_t hi) const {
  Rational r(1);
  if (hi < lo) return r;
  // left tail part: [lo, min(hi, k_min - 1)]
  const std::int64_t left_hi = std::min(hi, k_min_ - 1);
  if (lo <= left_hi) {
    const auto L = static_cast<std::int64_t>(left_.size());
    const std::int64_t len = left_hi - lo + 1;
    const std::int64_t full = len / L;
    if (full > 0) r *= pow(left_product(), full);
    for (std::int64_t k = lo + full * L; k <= left_hi; ++k) r *= (*this)[k];
  }
  const std::int64_t core_lo = std::max(lo, k_min_);
  const std::int64_t core_hi = std::min(hi, k_max());
  for (std::int64_t k = core_lo; k <= core_hi; ++k) r *= (*this)[k];
  const std::int64_t right_lo = std::max(lo, k_max() + 1);
  if (right_lo <= hi) {
    const auto R = static_cast<std::int64_t>(right_.size());
    const std::int64_t len = hi - right_lo + 1;
    const std::int64_t full = len / R;
    if (full > 0) r *= pow(right_product(), full);
    for (std::int64_t k = right_lo + full * R; k <= hi; ++k) r *= (*this)[k];
  }
  return r;
}

Rational PeriodicSequence::anchored_product(std::int64_t k) const {
  if (k >= 0) return product(1, k);
  Rational r = product(k + 1, 0);
  return Rational(1) / r;
}

PeriodicSequence PeriodicSequence::reciprocal() const {
  auto inv = [](const std::vector<Rational>& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(Rational(1) / x);
    return out;
  };
  return PeriodicSequence(k_min_, inv(core_), inv(left_), inv(right_));
}

PeriodicSequence PeriodicSequence::scaled(const Rational& factor) const {
  auto scale = [&](const std::vector<Rational>& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x * factor);
    return out;
  };
  return PeriodicSequence(k_min_, scale(core_), scale(left_), scale(right_));
}

bool operator==(const PeriodicSequence& a, const PeriodicSequence& b) {
  // Beyond both cores each side is jointly periodic with the lcm period, so one full
  // lcm block past the outermost core boundary decides the tail.
  const auto L = static_cast<std::int64_t>(lcm_size(a.left_.size(), b.left_.size()));
  const auto R = static_cast<std::int64_t>(lcm_size(a.right_.size(), b.right_.size()));
  const std::int64_t lo = std::min(a.k_min(), b.k_min()) - L;
  const std::int64_t hi = std::max(a.k_max(), b.k_max()) + R;
  for (std::int64_t k = lo; k <= hi; ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

}  // namespace shiftlike
