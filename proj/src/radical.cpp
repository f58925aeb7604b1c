#include "shiftlike/radical.hpp"

#include <cmath>

#include "shiftlike/errors.hpp"

namespace shiftlike {

RadicalValue::RadicalValue(const Rational& value) {
  if (value != 0) terms_.push_back({value, Rational(1)});
}

RadicalValue RadicalValue::root(const Rational& r, unsigned long q) {
  if (r <= 0) throw ValidationError("radicand must be positive, got " + shiftlike::to_string(r));
  if (q == 0) throw ValidationError("root index must be >= 1");
  if (q == 1) return RadicalValue(r);
  RadicalValue v;
  v.q_ = q;
  v.add_term(Rational(1), r);
  return v;
}

bool RadicalValue::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().radicand == 1);
}

Rational RadicalValue::rational() const {
  if (!is_rational()) throw InexactError("value is irrational: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.front().coef;
}

void RadicalValue::add_term(Rational coef, Rational radicand) {
  if (coef == 0) return;
  if (q_ == 0) {
    if (radicand != 1) throw std::logic_error("radical term without a root index");
  } else if (radicand != 1) {
    if (auto r = exact_root(radicand, q_)) {
      coef *= *r;
      radicand = 1;
    }
  }
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    auto ratio = radicand == it->radicand ? std::optional<Rational>(Rational(1))
                                          : (q_ == 0 ? std::nullopt : exact_root(radicand / it->radicand, q_));
    if (!ratio) continue;
    it->coef += coef * *ratio;
    if (it->coef == 0) terms_.erase(it);
    return;
  }
  terms_.push_back({std::move(coef), std::move(radicand)});
}

unsigned long RadicalValue::unify(const RadicalValue& o) const {
  if (q_ == 0) return o.q_;
  if (o.q_ == 0 || o.q_ == q_) return q_;
  if (is_zero()) return o.q_;
  if (o.is_zero()) return q_;
  throw InexactError("cannot combine radicals of index " + std::to_string(q_) + " and " + std::to_string(o.q_));
}

RadicalValue RadicalValue::operator-() const {
  RadicalValue v = *this;
  for (auto& t : v.terms_) t.coef = -t.coef;
  return v;
}

RadicalValue& RadicalValue::operator+=(const RadicalValue& o) {
  q_ = unify(o);
  for (const auto& t : o.terms_) add_term(t.coef, t.radicand);
  return *this;
}

RadicalValue& RadicalValue::operator*=(const RadicalValue& o) {
  RadicalValue out;
  out.q_ = unify(o);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) out.add_term(a.coef * b.coef, a.radicand * b.radicand);
  }
  *this = std::move(out);
  return *this;
}

RadicalValue& RadicalValue::operator/=(const RadicalValue& o) {
  if (o.terms_.size() != 1) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    throw InexactError("division by a sum of radicals");
  }
  RadicalValue inv;
  inv.q_ = o.q_;
  inv.terms_.push_back({Rational(1) / o.terms_.front().coef, Rational(1) / o.terms_.front().radicand});
  return *this *= inv;
}

Rational RadicalValue::abs_pow(unsigned long p) const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() > 1) throw InexactError("|x|^p of a sum of radicals is not rational: " + to_string());
  const auto& t = terms_.front();
  Rational a = abs(t.coef);
  Rational out = pow(a, static_cast<std::int64_t>(p));
  if (t.radicand == 1) return out;
  if (p % q_ != 0) throw InexactError("|x|^p with p not a multiple of the root index");
  return out * pow(t.radicand, static_cast<std::int64_t>(p / q_));
}

double RadicalValue::to_double() const {
  double s = 0;
  for (const auto& t : terms_) {
    const double r = t.radicand == 1 ? 1.0 : std::pow(shiftlike::to_double(t.radicand), 1.0 / static_cast<double>(q_));
    s += shiftlike::to_double(t.coef) * r;
  }
  return s;
}

std::string RadicalValue::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (j > 0) s += " + ";
    s += shiftlike::to_string(terms_[j].coef);
    if (terms_[j].radicand != 1) {
      s += "*(" + shiftlike::to_string(terms_[j].radicand) + ")^(1/" + std::to_string(q_) + ")";
    }
  }
  return s;
}

}  // namespace shiftlike
