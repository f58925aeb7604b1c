#pragma once

// Seeded random generators for specs, models and vectors used across the tests.

#include <cstdint>
#include <random>
#include <vector>

#include "shiftlike/core_model.hpp"

namespace testsupport {

using shiftlike::Rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(eng_() % span);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }
  Rational rational(std::int64_t num_max, std::int64_t den_max) {
    return Rational(uniform(1, num_max), uniform(1, den_max));
  }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<Rational> rationals(std::initializer_list<const char*> text) {
  std::vector<Rational> out;
  for (const char* t : text) out.push_back(shiftlike::parse_rational(t));
  return out;
}

inline std::vector<Rational> random_values(Rng& rng, std::size_t n) {
  static const std::vector<Rational> pool = rationals({"1/8", "1/4", "1/3", "1/2", "2/3", "1", "3/2", "2", "3", "4", "8"});
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.pick(pool));
  return out;
}

inline shiftlike::PeriodicSequence random_sequence(Rng& rng) {
  return shiftlike::PeriodicSequence(rng.uniform(-3, 2), random_values(rng, static_cast<std::size_t>(rng.uniform(0, 4))),
                                     random_values(rng, static_cast<std::size_t>(rng.uniform(1, 3))),
                                     random_values(rng, static_cast<std::size_t>(rng.uniform(1, 3))));
}

inline shiftlike::Exponent random_exponent(Rng& rng) {
  static const std::vector<Rational> ps = rationals({"1", "3/2", "2", "3"});
  return shiftlike::Exponent(rng.pick(ps));
}

inline shiftlike::WeightSpec random_weights(Rng& rng) {
  return shiftlike::WeightSpec(random_exponent(rng), random_sequence(rng));
}

/// Random period of length `len` (a multiple of `target_len`) whose product is
/// target^(len/target_len), i.e. whose per-step rate equals that of a period of
/// length `target_len` with product `target`.
inline std::vector<Rational> period_with_rate(Rng& rng, const Rational& target, std::size_t target_len,
                                              std::size_t len) {
  std::vector<Rational> v = random_values(rng, len);
  Rational prod(1);
  for (std::size_t j = 0; j + 1 < len; ++j) prod *= v[j];
  const Rational want = shiftlike::pow(target, static_cast<std::int64_t>(len / target_len));
  v.back() = want / prod;
  return v;
}

/// Random admissible model with `atoms` atoms: all tails share the per-step rates of atom 0.
inline shiftlike::DissipativeModel random_model(Rng& rng, std::size_t atoms, const shiftlike::Exponent& p) {
  std::vector<Rational> measures;
  std::vector<shiftlike::PeriodicSequence> seqs;
  const std::size_t L0 = static_cast<std::size_t>(rng.uniform(1, 2));
  const std::size_t R0 = static_cast<std::size_t>(rng.uniform(1, 2));
  const auto left0 = random_values(rng, L0);
  const auto right0 = random_values(rng, R0);
  Rational qL(1), qR(1);
  for (const auto& x : left0) qL *= x;
  for (const auto& x : right0) qR *= x;
  for (std::size_t i = 0; i < atoms; ++i) {
    measures.push_back(rng.rational(4, 4));
    if (i == 0) {
      seqs.emplace_back(rng.uniform(-3, 2), random_values(rng, static_cast<std::size_t>(rng.uniform(0, 3))), left0,
                        right0);
    } else {
      const std::size_t L = L0 * static_cast<std::size_t>(rng.uniform(1, 2));
      const std::size_t R = R0 * static_cast<std::size_t>(rng.uniform(1, 2));
      seqs.emplace_back(rng.uniform(-3, 2), random_values(rng, static_cast<std::size_t>(rng.uniform(0, 3))),
                        period_with_rate(rng, qL, L0, L), period_with_rate(rng, qR, R0, R));
    }
  }
  return shiftlike::build_model(p, std::move(measures), std::move(seqs));
}

}  // namespace testsupport
