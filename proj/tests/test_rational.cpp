#include <doctest.h>

#include "shiftlike/errors.hpp"
#include "shiftlike/rational.hpp"
#include "shiftlike/sequence.hpp"
#include "support.hpp"

using namespace shiftlike;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("0.5"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1e3"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("/3"), ValidationError);
}

TEST_CASE("powers and roots") {
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(pow(Rational(5), 0) == 1);
  CHECK(exact_root(Rational(8, 27), 3) == Rational(2, 3));
  CHECK_FALSE(exact_root(Rational(2), 2).has_value());
}

TEST_CASE("exponent") {
  CHECK_THROWS_AS(Exponent(Rational(1, 2)), ValidationError);
  Exponent p(Rational(3, 2));
  CHECK_FALSE(p.is_integer());
  CHECK_THROWS_AS(p.integer(), InexactError);
  // 4 >= 2^(3/2) since 16 >= 8; 2 < 2^(3/2)
  CHECK(at_least_power(Rational(4), Rational(2), p));
  CHECK_FALSE(at_least_power(Rational(2), Rational(2), p));
  CHECK(at_least_power(Rational(8), Rational(4), p));
  CHECK_FALSE(at_least_power(Rational(7), Rational(4), p));
}

TEST_CASE("extended rationals") {
  ExtendedRational a(Rational(1, 2));
  auto inf = ExtendedRational::infinity();
  CHECK((a + a) == ExtendedRational(Rational(1)));
  CHECK((a + inf).is_infinite());
  CHECK(a < inf);
  CHECK((inf * Rational(3)).is_infinite());
  CHECK(inf.to_string() == "inf");
  CHECK_THROWS_AS(ExtendedRational(Rational(-1)), ValidationError);
}

TEST_CASE("periodic sequence lookup and products") {
  PeriodicSequence s(-1, testsupport::rationals({"2", "3"}), testsupport::rationals({"5", "7"}),
                     testsupport::rationals({"11"}));
  CHECK(s[-1] == 2);
  CHECK(s[0] == 3);
  CHECK(s[-3] == 5);
  CHECK(s[-2] == 7);
  CHECK(s[-5] == 5);
  CHECK(s[-4] == 7);
  CHECK(s[1] == 11);
  CHECK(s[50] == 11);

  testsupport::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto seq = testsupport::random_sequence(rng);
    const std::int64_t lo = rng.uniform(-20, 10);
    const std::int64_t hi = lo + rng.uniform(-1, 25);
    Rational direct(1);
    for (std::int64_t k = lo; k <= hi; ++k) direct *= seq[k];
    CHECK(seq.product(lo, hi) == direct);
    for (std::int64_t k = -15; k <= 15; ++k) {
      CHECK(seq.anchored_product(k) / seq.anchored_product(k - 1) == seq[k]);
    }
    CHECK(seq.anchored_product(0) == 1);
  }
}

TEST_CASE("periodic sequence equality ignores representation") {
  using testsupport::rationals;
  PeriodicSequence a(0, {}, rationals({"2"}), rationals({"3"}));
  PeriodicSequence b(-2, rationals({"2", "2", "3"}), rationals({"2", "2"}), rationals({"3", "3", "3"}));
  CHECK(a == b);
  PeriodicSequence c(-2, rationals({"2", "2", "4"}), rationals({"2"}), rationals({"3"}));
  CHECK_FALSE(a == c);
  CHECK_THROWS_AS(PeriodicSequence(0, rationals({"0"}), rationals({"1"}), rationals({"1"})), ValidationError);
  CHECK_THROWS_AS(PeriodicSequence(0, {}, {}, rationals({"1"})), ValidationError);
}
