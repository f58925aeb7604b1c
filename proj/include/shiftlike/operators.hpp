#pragma once

// T_f on simple functions over the atomic model, the weighted backward shift B_w on
// finitely supported sequences, the translation T_g on l^p(Z, nu) and the isometry
// between the last two. Everything is templated on the scalar: `double` for float mode,
// RadicalValue for exact mode (integer p only). Norms are always p-th powers.

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "shiftlike/core_model.hpp"
#include "shiftlike/radical.hpp"

namespace shiftlike {

template <class S>
struct Scalar;

template <>
struct Scalar<double> {
  using Norm = double;
  static double from_rational(const Rational& r) { return to_double(r); }
  static double root(const Rational& r, const Exponent& p) { return std::pow(to_double(r), 1.0 / p.as_double()); }
  static Norm abs_pow(double v, const Exponent& p) { return std::pow(std::abs(v), p.as_double()); }
  static Norm norm_from_rational(const Rational& r) { return to_double(r); }
  static bool is_zero(double v) { return v == 0.0; }
  static double as_double(double v) { return v; }
};

template <>
struct Scalar<RadicalValue> {
  using Norm = Rational;
  static RadicalValue from_rational(const Rational& r) { return RadicalValue(r); }
  static RadicalValue root(const Rational& r, const Exponent& p) { return RadicalValue::root(r, p.integer()); }
  static Norm abs_pow(const RadicalValue& v, const Exponent& p) { return v.abs_pow(p.integer()); }
  static Norm norm_from_rational(const Rational& r) { return r; }
  static bool is_zero(const RadicalValue& v) { return v.is_zero(); }
  static double as_double(const RadicalValue& v) { return v.to_double(); }
};

template <class S>
using NormOf = typename Scalar<S>::Norm;

/// Finite map from a key to a nonzero coefficient; zeros are never stored.
template <class Key, class S>
class SparseVector {
 public:
  using Map = std::map<Key, S>;

  void set(const Key& k, S v) {
    if (Scalar<S>::is_zero(v)) {
      entries_.erase(k);
    } else {
      entries_[k] = std::move(v);
    }
  }
  void add(const Key& k, const S& v) {
    auto it = entries_.find(k);
    if (it == entries_.end()) {
      set(k, v);
      return;
    }
    it->second += v;
    if (Scalar<S>::is_zero(it->second)) entries_.erase(it);
  }
  S at(const Key& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? S(0) : it->second;
  }
  const Map& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  SparseVector& operator+=(const SparseVector& o) {
    for (const auto& [k, v] : o.entries_) add(k, v);
    return *this;
  }
  SparseVector& operator-=(const SparseVector& o) {
    for (const auto& [k, v] : o.entries_) add(k, S(0) - v);
    return *this;
  }
  SparseVector& operator*=(const S& a) {
    SparseVector out;
    for (const auto& [k, v] : entries_) out.set(k, v * a);
    return *this = std::move(out);
  }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const S& a, SparseVector x) { return x *= a; }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

 private:
  Map entries_;
};

/// x = sum_k x_k e_k.
template <class S>
using ShiftVector = SparseVector<std::int64_t, S>;

/// Cell (k, i) is f^k(B_i).
using Cell = std::pair<std::int64_t, std::size_t>;

/// phi = sum c_{k,i} chi_{f^k(B_i)}.
template <class S>
using LpFunction = SparseVector<Cell, S>;

template <class S>
ShiftVector<S> unit_vector(std::int64_t k) {
  ShiftVector<S> x;
  x.set(k, S(1));
  return x;
}

/// T_f^n: the coefficient of cell (k, i) becomes the old coefficient of (k + n, i).
template <class S>
LpFunction<S> apply_Tf(const DissipativeModel& model, const LpFunction<S>& phi, std::int64_t n) {
  LpFunction<S> out;
  for (const auto& [cell, c] : phi.entries()) {
    if (cell.second >= model.atom_count()) throw std::out_of_range("atom index out of range");
    out.set({cell.first - n, cell.second}, c);
  }
  return out;
}

/// sum |c_{k,i}|^p mu(f^k B_i).
template <class S>
NormOf<S> lp_norm_p(const DissipativeModel& model, const LpFunction<S>& phi) {
  NormOf<S> s(0);
  for (const auto& [cell, c] : phi.entries()) {
    s += Scalar<S>::abs_pow(c, model.p()) * Scalar<S>::norm_from_rational(model.cell_measure(cell.first, cell.second));
  }
  return s;
}

/// B_w^n with (B_w x)(i) = w_{i+1} x_{i+1}; negative n applies the inverse x(i) -> x_{i-1}/w_i.
template <class S>
ShiftVector<S> apply_Bw(const WeightSpec& w, const ShiftVector<S>& x, std::int64_t n) {
  if (n == 0) return x;
  ShiftVector<S> out;
  const auto& s = w.powers();
  for (const auto& [j, v] : x.entries()) {
    if (n > 0) {
      out.set(j - n, v * Scalar<S>::root(s.product(j - n + 1, j), w.p()));
    } else {
      const std::int64_t m = -n;
      out.set(j + m, v * Scalar<S>::root(Rational(1) / s.product(j + 1, j + m), w.p()));
    }
  }
  return out;
}

/// T_g^n on l^p(Z, nu) with g(i) = i + 1: (T_g^n x)(i) = x(i + n).
template <class S>
ShiftVector<S> apply_Tg(const ShiftVector<S>& x, std::int64_t n) {
  ShiftVector<S> out;
  for (const auto& [j, v] : x.entries()) out.set(j - n, v);
  return out;
}

/// (J x)(i) = x_i nu(i)^(1/p), an isometry l^p(Z, nu) -> l^p(Z) with J T_g = B_w J.
template <class S>
ShiftVector<S> conjugacy_isometry(const NuSpec& nu, const ShiftVector<S>& x, const Exponent& p) {
  ShiftVector<S> out;
  for (const auto& [j, v] : x.entries()) out.set(j, v * Scalar<S>::root(nu[j], p));
  return out;
}

/// sum |x_i|^p.
template <class S>
NormOf<S> norm_p(const ShiftVector<S>& x, const Exponent& p) {
  NormOf<S> s(0);
  for (const auto& [j, v] : x.entries()) s += Scalar<S>::abs_pow(v, p);
  return s;
}

/// sum |x_i|^p nu(i).
template <class S>
NormOf<S> weighted_norm_p(const NuSpec& nu, const ShiftVector<S>& x, const Exponent& p) {
  NormOf<S> s(0);
  for (const auto& [j, v] : x.entries()) s += Scalar<S>::abs_pow(v, p) * Scalar<S>::norm_from_rational(nu[j]);
  return s;
}

template <class N>
struct OrbitPoint {
  std::int64_t n;
  N norm_p;
};

/// ||B_w^n x||_p^p for n in [n_lo, n_hi].
template <class S>
std::vector<OrbitPoint<NormOf<S>>> orbit_norms(const WeightSpec& w, const ShiftVector<S>& x, std::int64_t n_lo,
                                               std::int64_t n_hi) {
  std::vector<OrbitPoint<NormOf<S>>> out;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) out.push_back({n, norm_p(apply_Bw(w, x, n), w.p())});
  return out;
}

/// ||T_f^n phi||_p^p for n in [n_lo, n_hi].
template <class S>
std::vector<OrbitPoint<NormOf<S>>> orbit_norms(const DissipativeModel& model, const LpFunction<S>& phi,
                                               std::int64_t n_lo, std::int64_t n_hi) {
  std::vector<OrbitPoint<NormOf<S>>> out;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) out.push_back({n, lp_norm_p(model, apply_Tf(model, phi, n))});
  return out;
}

inline void write_norm(std::ostream& os, double v) { os << v; }
inline void write_norm(std::ostream& os, const Rational& v) { os << to_string(v); }

template <class N>
void write_orbit_csv(std::ostream& os, const std::vector<OrbitPoint<N>>& rows) {
  os << "n,norm_p\n";
  for (const auto& r : rows) {
    os << r.n << ',';
    write_norm(os, r.norm_p);
    os << '\n';
  }
}

}  // namespace shiftlike
