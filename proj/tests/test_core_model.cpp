#include <doctest.h>

#include "shiftlike/core_model.hpp"
#include "shiftlike/errors.hpp"
#include "support.hpp"

using namespace shiftlike;
using testsupport::rationals;

namespace {

// Prefix-product oracle: walks from k = 0 one step at a time using only lookups.
Rational walk_measure(const Rational& base, const PeriodicSequence& ratios, std::int64_t k) {
  Rational m = base;
  for (std::int64_t t = 1; t <= k; ++t) m *= ratios[t];
  for (std::int64_t t = 0; t > k; --t) m /= ratios[t];
  return m;
}

Rational walk_image(const DissipativeModel& model, std::int64_t k) {
  Rational m(0);
  for (std::size_t i = 0; i < model.atom_count(); ++i) {
    m += walk_measure(model.atom_measures()[i], model.ratio_seqs()[i], k);
  }
  return m;
}

PeriodicSequence constant(const char* v) { return PeriodicSequence::constant(parse_rational(v)); }

WeightSpec split_weights(const char* left, const char* right, long p) {
  // value `left` for i <= 0, `right` for i >= 1
  return WeightSpec(Exponent(p), PeriodicSequence(1, {}, rationals({left}), rationals({right})));
}

}  // namespace

TEST_CASE("build_model examples") {
  auto m1 = build_model(Exponent(1), {Rational(1)}, {constant("1")});
  for (std::int64_t k = -10; k <= 10; ++k) CHECK(m1.image_measure(k) == 1);

  auto m2 = build_model(Exponent(1), rationals({"1/2", "1/2"}), {constant("2"), constant("2")});
  for (std::int64_t k = -10; k <= 10; ++k) CHECK(m2.image_measure(k) == pow(Rational(2), k));

  // ratio 3 at k = 0 only: the jump sits between f^{-1}W and W.
  auto m3 = build_model(Exponent(2), {Rational(1)}, {PeriodicSequence(0, rationals({"3"}), rationals({"1"}), rationals({"1"}))});
  for (std::int64_t k = -6; k <= 6; ++k) {
    CHECK(m3.image_measure(k) == walk_image(m3, k));
    CHECK(m3.image_measure(k) == (k < 0 ? Rational(1, 3) : Rational(1)));
  }
  auto w3 = weights_from_model(m3);
  for (std::int64_t k = -6; k <= 6; ++k) CHECK(w3.power(k) == (k == 0 ? Rational(1, 3) : Rational(1)));
}

TEST_CASE("build_model rejects invalid input") {
  CHECK_THROWS_AS(build_model(Exponent(1), {}, {}), ValidationError);
  CHECK_THROWS_AS(build_model(Exponent(1), rationals({"-1"}), {constant("1")}), ValidationError);
  CHECK_THROWS_AS(build_model(Exponent(1), rationals({"0"}), {constant("1")}), ValidationError);
  CHECK_THROWS_AS(build_model(Exponent(1), rationals({"1", "1"}), {constant("1")}), ValidationError);
  try {
    build_model(Exponent(1), rationals({"-1"}), {constant("1")});
  } catch (const ValidationError& e) {
    CHECK(e.field() == "atoms[0]");
  }
}

TEST_CASE("incomparable tails have unbounded distortion and are rejected") {
  // Atoms [1/2, 1/2] with constant ratios 2 and 3: nu(k) = (2^k + 3^k)/2, and the deviation
  // of atom 0, nu(k)/2^k, increases strictly over k = 1..40.
  Rational prev(0);
  for (std::int64_t k = 1; k <= 40; ++k) {
    const Rational nu = (pow(Rational(2), k) + pow(Rational(3), k)) / 2;
    const Rational dev = nu / pow(Rational(2), k);
    CHECK(dev > prev);
    prev = dev;
  }
  CHECK(prev > Rational(1000000));
  CHECK_THROWS_AS(build_model(Exponent(1), rationals({"1/2", "1/2"}), {constant("2"), constant("3")}), ValidationError);
  // Same rate with different period shapes is admissible: (1, 4) has rate 2 per step.
  CHECK_NOTHROW(build_model(Exponent(1), rationals({"1/2", "1/2"}),
                            {constant("2"), PeriodicSequence(0, {}, rationals({"1", "4"}), rationals({"4", "1"}))}));
}

TEST_CASE("distortion constant") {
  CHECK(distortion_constant(build_model(Exponent(2), {Rational(3)}, {constant("5")})) == ExtendedRational(Rational(1)));
  auto seq = PeriodicSequence(-1, rationals({"2", "1/3"}), rationals({"1/2"}), rationals({"3"}));
  CHECK(distortion_constant(build_model(Exponent(1), rationals({"1/4", "3/4"}), {seq, seq})) ==
        ExtendedRational(Rational(1)));

  // Brute force over every union of atoms on a wide window.
  testsupport::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t atoms = static_cast<std::size_t>(rng.uniform(2, 3));
    auto model = testsupport::random_model(rng, atoms, Exponent(1));
    const auto K = distortion_constant(model);
    REQUIRE(K.is_finite());
    Rational brute(1);
    for (std::int64_t k = -30; k <= 30; ++k) {
      const Rational nu = walk_image(model, k) / model.total_measure();
      for (unsigned mask = 1; mask < (1u << atoms); ++mask) {
        Rational mb(0), mfb(0);
        for (std::size_t i = 0; i < atoms; ++i) {
          if (mask & (1u << i)) {
            mb += model.atom_measures()[i];
            mfb += walk_measure(model.atom_measures()[i], model.ratio_seqs()[i], k);
          }
        }
        const Rational rho = mfb / mb / nu;
        brute = std::max(brute, rho >= 1 ? rho : Rational(1) / rho);
      }
    }
    CHECK(K == ExtendedRational(brute));
  }
}

TEST_CASE("weights_from_model examples") {
  auto w1 = weights_from_model(build_model(Exponent(1), {Rational(1)}, {constant("1")}));
  CHECK(w1.powers() == constant("1"));
  auto w2 = weights_from_model(build_model(Exponent(1), {Rational(1)}, {constant("2")}));
  CHECK(w2.powers() == constant("1/2"));
}

TEST_CASE("nu conversions") {
  auto mp = build_model(Exponent(1), {Rational(1)}, {constant("1")});
  auto nu_mp = nu_from_model(mp);
  for (std::int64_t k = -8; k <= 8; ++k) CHECK(nu_mp[k] == 1);

  auto m2 = build_model(Exponent(1), rationals({"1/2", "1/2"}), {constant("2"), constant("2")});
  auto nu2 = nu_from_model(m2);
  for (std::int64_t k = -8; k <= 8; ++k) CHECK(nu2[k] == pow(Rational(2), k));

  auto nu_w2 = nu_from_weights(WeightSpec(Exponent(1), constant("2")));
  for (std::int64_t k = -8; k <= 8; ++k) CHECK(nu_w2[k] == pow(Rational(2), -k));

  auto nu_split = nu_from_weights(split_weights("1/2", "2", 1));
  for (std::int64_t k = -8; k <= 8; ++k) CHECK(nu_split[k] == pow(Rational(2), -(k < 0 ? -k : k)));

  auto w_back = weights_from_nu(nu_w2, Exponent(1));
  CHECK(w_back.powers() == constant("2"));
  CHECK(weights_from_nu(nu_mp, Exponent(3)).powers() == constant("1"));

  auto model = model_from_weights(WeightSpec(Exponent(1), constant("2")));
  for (std::int64_t k = -8; k <= 8; ++k) CHECK(model.image_measure(k) == pow(Rational(2), -k));
}

TEST_CASE("NuSpec validation and lookup") {
  CHECK_THROWS_AS(NuSpec(1, rationals({"1"}), rationals({"1"}), rationals({"1"})), ValidationError);
  CHECK_THROWS_AS(NuSpec(0, rationals({"2"}), rationals({"1"}), rationals({"1"})), ValidationError);
  NuSpec nu(-1, rationals({"3", "1"}), rationals({"2", "5"}), rationals({"7"}));
  CHECK(nu[-2] == 6);
  CHECK(nu[-3] == 30);
  CHECK(nu[-4] == 60);
  CHECK(nu[1] == 7);
  CHECK(nu[3] == 343);
  CHECK(nu.left_rate() == 10);
}

TEST_CASE("roundtrips and consistency on random specs") {
  testsupport::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto w = testsupport::random_weights(rng);
    auto nu = nu_from_weights(w);
    for (std::int64_t k = -12; k <= 12; ++k) {
      // independent evaluation of the product formulas
      Rational expect(1);
      for (std::int64_t t = 1; t <= k; ++t) expect /= w.power(t);
      for (std::int64_t t = k + 1; t <= 0; ++t) expect *= w.power(t);
      CHECK(nu[k] == expect);
    }
    CHECK(weights_from_nu(nu, w.p()) == w);
    auto model = model_from_weights(w);
    CHECK(weights_from_model(model) == w);
    CHECK(distortion_constant(model) == ExtendedRational(Rational(1)));
    CHECK(nu_from_model(model) == nu);
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto model = testsupport::random_model(rng, static_cast<std::size_t>(rng.uniform(1, 3)), testsupport::random_exponent(rng));
    auto nu = nu_from_model(model);
    for (std::int64_t k = -12; k <= 12; ++k) CHECK(nu[k] == walk_image(model, k) / model.total_measure());
    CHECK(nu_from_weights(weights_from_model(model)) == nu);
  }
}

TEST_CASE("mu_total") {
  auto chaotic = model_from_weights(split_weights("1/2", "2", 1));
  CHECK(mu_total(chaotic) == ExtendedRational(Rational(3)));
  CHECK(mu_total(build_model(Exponent(1), {Rational(1)}, {constant("1")})).is_infinite());
  CHECK(mu_total(model_from_weights(WeightSpec(Exponent(1), constant("2")))).is_infinite());

  // finite iff both tail rates < 1, and the closed form matches a long partial sum
  testsupport::Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    auto w = testsupport::random_weights(rng);
    auto nu = nu_from_weights(w);
    auto total = nu_total(nu);
    CHECK(total.is_finite() == (nu.left_rate() < 1 && nu.right_rate() < 1));
    if (total.is_finite()) {
      Rational partial(0);
      for (std::int64_t k = -400; k <= 400; ++k) partial += nu[k];
      CHECK(partial <= total.value());
      CHECK(to_double(total.value() - partial) < 1e-9 * to_double(total.value()));
    }
  }
}
