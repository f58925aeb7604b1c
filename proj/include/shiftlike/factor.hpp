#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "shiftlike/core_model.hpp"
#include "shiftlike/operators.hpp"

namespace shiftlike {

/// a ~_L b, i.e. a <= L b and b <= L a.
template <class N>
struct ComparisonWitness {
  N lhs{};
  N rhs{};
  Rational L{1};
  bool pass = true;
  /// First iterate at which the relation failed, for range checks.
  std::optional<std::int64_t> failing_n;
};

namespace detail {

inline bool within(const Rational& a, const Rational& b, const Rational& L) { return a <= L * b && b <= L * a; }

// Float mode allows a relative slack of 1e-12 on top of the constant.
inline bool within(double a, double b, const Rational& L) {
  const double l = to_double(L) * (1.0 + 1e-12);
  const double slack = 1e-300;
  return a <= l * b + slack && b <= l * a + slack;
}

}  // namespace detail

/// Gamma(phi)(k) = mu(f^k W)^(1/p) / mu(W) * sum_i c_{k,i} mu(B_i).
template <class S>
ShiftVector<S> gamma(const DissipativeModel& model, const LpFunction<S>& phi) {
  ShiftVector<S> out;
  for (const auto& [cell, c] : phi.entries()) {
    const auto [k, i] = cell;
    const S scale = Scalar<S>::root(model.image_measure(k), model.p()) *
                    Scalar<S>::from_rational(model.atom_measures().at(i) / model.total_measure());
    out.add(k, c * scale);
  }
  return out;
}

/// The right inverse of gamma that is constant on each f^k(W): x_k / mu(f^k W)^(1/p).
template <class S>
LpFunction<S> selector(const DissipativeModel& model, const ShiftVector<S>& x) {
  LpFunction<S> out;
  for (const auto& [k, v] : x.entries()) {
    const S c = v / Scalar<S>::root(model.image_measure(k), model.p());
    for (std::size_t i = 0; i < model.atom_count(); ++i) out.set({k, i}, c);
  }
  return out;
}

/// ||T_f^n selector(x)||_p^p = ||B_w^n x||_p^p for n in [n_lo, n_hi] (L = 1). Reports the
/// values at the first failing n, or at n_hi when all pass.
template <class S>
ComparisonWitness<NormOf<S>> strong_selector_check(const DissipativeModel& model, const ShiftVector<S>& x,
                                                   std::int64_t n_lo, std::int64_t n_hi) {
  const auto w = weights_from_model(model);
  const auto phi = selector(model, x);
  ComparisonWitness<NormOf<S>> out;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    out.lhs = lp_norm_p(model, apply_Tf(model, phi, n));
    out.rhs = norm_p(apply_Bw(w, x, n), w.p());
    if (!detail::within(out.lhs, out.rhs, out.L)) {
      out.pass = false;
      out.failing_n = n;
      return out;
    }
  }
  return out;
}

/// Compares  int_{f^k W} |phi|^p o f^n dmu  with  (mu(f^k W)/mu(f^{k+n} W)) int_{f^{k+n} W} |phi|^p dmu.
///
/// Both sides are nu(k) * sum_i |c_{k+n,i}|^p mu(B_i) * rho_i, with rho_i the single-atom
/// distortion ratio at k (left) or k + n (right). Each rho_i lies in [1/K, K], so the two
/// sides agree up to L = K^2.
template <class S>
ComparisonWitness<NormOf<S>> distortion_norm_comparison(const DissipativeModel& model, const LpFunction<S>& phi,
                                                        std::int64_t k, std::int64_t n) {
  ComparisonWitness<NormOf<S>> out;
  const Rational K = distortion_constant(model).value();
  out.L = K * K;
  const Rational scale = model.image_measure(k) / model.image_measure(k + n);
  NormOf<S> lhs(0), rhs(0);
  for (std::size_t i = 0; i < model.atom_count(); ++i) {
    const auto a = Scalar<S>::abs_pow(phi.at({k + n, i}), model.p());
    lhs += a * Scalar<S>::norm_from_rational(model.cell_measure(k, i));
    rhs += a * Scalar<S>::norm_from_rational(scale * model.cell_measure(k + n, i));
  }
  out.lhs = lhs;
  out.rhs = rhs;
  out.pass = detail::within(out.lhs, out.rhs, out.L);
  if (!out.pass) out.failing_n = n;
  return out;
}

/// ||Gamma(T_f phi) - B_w Gamma(phi)||_p. Exactly 0.0 in exact mode unless the identity fails.
template <class S>
double semiconjugacy_residual(const DissipativeModel& model, const LpFunction<S>& phi) {
  const auto w = weights_from_model(model);
  const auto diff = gamma(model, apply_Tf(model, phi, 1)) - apply_Bw(w, gamma(model, phi), 1);
  double s = 0;
  for (const auto& [k, v] : diff.entries()) s += std::pow(std::abs(Scalar<S>::as_double(v)), model.p().as_double());
  return std::pow(s, 1.0 / model.p().as_double());
}

}  // namespace shiftlike
