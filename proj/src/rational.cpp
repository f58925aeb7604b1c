#include "shiftlike/rational.hpp"

#include <cctype>

#include "shiftlike/errors.hpp"

namespace shiftlike {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s.front() == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_decimal_integer(num_text)) {
    throw ValidationError("not an exact rational literal: \"" + std::string(text) + "\"");
  }
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(parse_integer(num_text));
  } else {
    const auto den_text = text.substr(slash + 1);
    if (!is_decimal_integer(den_text) || den_text.front() == '-' || den_text.front() == '+') {
      throw ValidationError("not an exact rational literal: \"" + std::string(text) + "\"");
    }
    mpz_class den = parse_integer(den_text);
    if (den == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
    r = Rational(parse_integer(num_text), den);
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

double to_double(const Rational& value) { return value.get_d(); }

Rational pow(const Rational& base, std::int64_t exponent) {
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exponent < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_root(const Rational& value, unsigned long q) {
  if (value < 0) return std::nullopt;
  if (q == 1) return value;
  mpz_class num, den;
  const bool num_exact = mpz_root(num.get_mpz_t(), value.get_num_mpz_t(), q) != 0;
  const bool den_exact = mpz_root(den.get_mpz_t(), value.get_den_mpz_t(), q) != 0;
  if (!num_exact || !den_exact) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Exponent::Exponent(Rational p) : p_(std::move(p)) {
  p_.canonicalize();
  if (p_ < 1) throw ValidationError("exponent p must be >= 1, got " + to_string(p_), "p");
  if (!p_.get_num().fits_ulong_p() || !p_.get_den().fits_ulong_p()) {
    throw ValidationError("exponent p too large", "p");
  }
  as_double_ = p_.get_d();
}

unsigned long Exponent::integer() const {
  if (!is_integer()) {
    throw InexactError("exact mode needs an integer exponent, got p = " + to_string(p_));
  }
  return p_.get_num().get_ui();
}

bool at_least_power(const Rational& x, const Rational& c, const Exponent& p) {
  const auto a = static_cast<std::int64_t>(p.numerator());
  const auto b = static_cast<std::int64_t>(p.denominator());
  return pow(x, b) >= pow(c, a);
}

ExtendedRational::ExtendedRational(Rational value) : value_(std::move(value)) {
  if (*value_ < 0) throw ValidationError("extended rational must be nonnegative");
}

const Rational& ExtendedRational::value() const {
  if (!value_) throw std::logic_error("ExtendedRational::value() on +inf");
  return *value_;
}

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtendedRational::infinity();
  return ExtendedRational(Rational(*a.value_ + *b.value_));
}

ExtendedRational operator*(const ExtendedRational& a, const Rational& scale) {
  if (scale <= 0) throw ValidationError("extended rational scale must be positive");
  if (a.is_infinite()) return a;
  return ExtendedRational(Rational(*a.value_ * scale));
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
  return *a.value_ == *b.value_;
}

std::partial_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_infinite() && b.is_infinite()) return std::partial_ordering::equivalent;
  if (a.is_infinite()) return std::partial_ordering::greater;
  if (b.is_infinite()) return std::partial_ordering::less;
  const int c = cmp(*a.value_, *b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

}  // namespace shiftlike
