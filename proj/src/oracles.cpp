#include "shiftlike/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include "shiftlike/errors.hpp"

namespace shiftlike {

// ---- pseudo-orbits -------------------------------------------------------------------------

namespace {

double lp_norm(const ShiftVector<double>& x, double p) {
  double s = 0;
  for (const auto& [k, v] : x.entries()) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

// Uniform double in [-1, 1) from raw 64-bit output, independent of the standard library's
// distribution implementations.
double signed_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

}  // namespace

PseudoOrbit::PseudoOrbit(std::int64_t N, std::vector<ShiftVector<double>> z, const Exponent& p)
    : N_(N), z_(std::move(z)) {
  if (N < 0) throw ValidationError("window must be nonnegative", "window");
  if (z_.size() != static_cast<std::size_t>(2 * N + 1)) {
    throw ValidationError("expected " + std::to_string(2 * N + 1) + " perturbations", "z");
  }
  for (const auto& v : z_) sup_ = std::max(sup_, lp_norm(v, p.as_double()));
}

PseudoOrbit PseudoOrbit::constant_unit(std::int64_t N, const Exponent& p) {
  return PseudoOrbit(N, std::vector<ShiftVector<double>>(static_cast<std::size_t>(2 * N + 1), unit_vector<double>(0)), p);
}

PseudoOrbit PseudoOrbit::random(std::int64_t N, std::int64_t band, std::uint64_t seed, const Exponent& p) {
  band = std::min(band, N);
  std::vector<ShiftVector<double>> z;
  for (std::int64_t n = -N; n <= N; ++n) {
    // Each z_n has its own stream, so windows of different size share their common terms.
    std::mt19937_64 eng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n + (1LL << 40)));
    ShiftVector<double> v;
    for (std::int64_t k = -band; k <= band; ++k) v.set(k, signed_unit(eng));
    const double norm = lp_norm(v, p.as_double());
    if (norm > 0) v *= 1.0 / norm;
    z.push_back(std::move(v));
  }
  return PseudoOrbit(N, std::move(z), p);
}

std::pair<std::int64_t, std::int64_t> PseudoOrbit::support() const {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
  for (const auto& v : z_) {
    if (v.empty()) continue;
    lo = std::min(lo, v.entries().begin()->first);
    hi = std::max(hi, v.entries().rbegin()->first);
  }
  if (lo > hi) return {0, -1};
  return {lo, hi};
}

double recurrence_residual(const WeightSpec& w, const PseudoOrbit& z, const std::vector<ShiftVector<double>>& y) {
  const std::int64_t N = z.window();
  if (y.size() != static_cast<std::size_t>(2 * N + 2)) return std::numeric_limits<double>::infinity();
  double worst = 0, scale = 1;
  std::int64_t lo = 0, hi = 0;
  for (const auto& v : y) {
    if (v.empty()) continue;
    lo = std::min(lo, v.entries().begin()->first);
    hi = std::max(hi, v.entries().rbegin()->first);
    for (const auto& [k, x] : v.entries()) scale = std::max(scale, 1.0 + std::abs(x));
  }
  std::vector<double> wt(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t j = lo; j <= hi; ++j) wt[static_cast<std::size_t>(j - lo)] = w.weight(j);
  // (B y)(j - 1) = w_j y(j), entry by entry
  for (std::int64_t n = -N; n <= N; ++n) {
    std::map<std::int64_t, double> r(y[static_cast<std::size_t>(n + N + 1)].entries().begin(),
                                     y[static_cast<std::size_t>(n + N + 1)].entries().end());
    for (const auto& [j, v] : y[static_cast<std::size_t>(n + N)].entries()) r[j - 1] -= wt[static_cast<std::size_t>(j - lo)] * v;
    for (const auto& [k, v] : z.at(n).entries()) r[k] -= v;
    for (const auto& [k, v] : r) worst = std::max(worst, std::abs(v));
  }
  return worst / scale;
}

// ---- splitting solver ----------------------------------------------------------------------

namespace {

struct Dense {
  std::int64_t lo;
  std::vector<double> v;
  double& operator[](std::int64_t i) { return v[static_cast<std::size_t>(i - lo)]; }
  double get(std::int64_t i) const {
    return (i < lo || i >= lo + static_cast<std::int64_t>(v.size())) ? 0.0 : v[static_cast<std::size_t>(i - lo)];
  }
};

ShiftVector<double> to_sparse(const Dense& d) {
  ShiftVector<double> out;
  for (std::size_t j = 0; j < d.v.size(); ++j) out.set(d.lo + static_cast<std::int64_t>(j), d.v[j]);
  return out;
}

double sup_norm(const std::vector<ShiftVector<double>>& y, double p) {
  double s = 0;
  for (const auto& v : y) s = std::max(s, lp_norm(v, p));
  return s;
}

}  // namespace

ShadowingResult shadowing_solve_splitting(const WeightSpec& w, const PseudoOrbit& z) {
  ShadowingResult res;
  res.method = "splitting";
  const auto verdict = has_shadowing(w);
  if (verdict.verdict != Verdict::yes) {
    res.flag = "no-splitting";
    res.ratio = std::numeric_limits<double>::quiet_NaN();
    return res;
  }
  const char cond = verdict.certificate.get("condition").front();
  auto stable = [cond](std::int64_t i) { return cond == 'A' || (cond == 'C' && i <= 0); };

  const std::int64_t N = z.window();
  const auto [zlo, zhi] = z.support();
  const std::int64_t lo = std::min<std::int64_t>(zlo, 0) - 2 * N - 2;
  const std::int64_t hi = std::max<std::int64_t>(zhi, 0) + 2 * N + 2;
  const auto size = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> wt(size + 1);
  for (std::int64_t i = lo; i <= hi + 1; ++i) wt[static_cast<std::size_t>(i - lo)] = w.weight(i);
  auto weight = [&](std::int64_t i) { return wt[static_cast<std::size_t>(i - lo)]; };

  const auto steps = static_cast<std::size_t>(2 * N + 2);  // n = -N .. N+1
  std::vector<Dense> a(steps, Dense{lo, std::vector<double>(size, 0.0)});
  std::vector<Dense> b(steps, Dense{lo, std::vector<double>(size, 0.0)});
  // a_{n+1} = B a_n + P_s z_n from a_{-N} = 0
  for (std::int64_t n = -N; n <= N; ++n) {
    const auto& cur = a[static_cast<std::size_t>(n + N)];
    auto& next = a[static_cast<std::size_t>(n + N + 1)];
    for (std::int64_t i = lo; i <= hi; ++i) next[i] = weight(i + 1) * cur.get(i + 1);
    for (const auto& [k, v] : z.at(n).entries()) {
      if (stable(k)) next[k] += v;
    }
  }
  // b_n = B^{-1}(b_{n+1} + P_u z_n) from b_{N+1} = 0
  for (std::int64_t n = N; n >= -N; --n) {
    Dense tmp = b[static_cast<std::size_t>(n + N + 1)];
    for (const auto& [k, v] : z.at(n).entries()) {
      if (!stable(k)) tmp[k] += v;
    }
    auto& cur = b[static_cast<std::size_t>(n + N)];
    for (std::int64_t i = lo; i <= hi; ++i) cur[i] = tmp.get(i - 1) / weight(i);
  }
  for (std::size_t t = 0; t < steps; ++t) {
    Dense d{lo, std::vector<double>(size)};
    for (std::size_t j = 0; j < size; ++j) d.v[j] = a[t].v[j] - b[t].v[j];
    res.y.push_back(to_sparse(d));
  }
  res.sup_y = sup_norm(res.y, w.p().as_double());
  res.ratio = z.sup_norm() > 0 ? res.sup_y / z.sup_norm() : 0.0;
  res.iterations = static_cast<std::int64_t>(steps);
  if (recurrence_residual(w, z, res.y) > 1e-9) {
    res.flag = "residual";
    return res;
  }
  res.converged = true;
  res.flag = "ok";
  return res;
}

// ---- window optimizer ----------------------------------------------------------------------

namespace {

// argmin over xi of sum_t a_t |xi + c_t|^p, a_t >= 0, not all zero.
double separable_argmin(const std::vector<double>& a, const std::vector<double>& c, double p) {
  const std::size_t T = a.size();
  if (p == 2.0) {
    double num = 0, den = 0;
    for (std::size_t t = 0; t < T; ++t) {
      num += a[t] * c[t];
      den += a[t];
    }
    return -num / den;
  }
  if (p == 1.0) {
    // weighted median of -c
    std::vector<std::pair<double, double>> pts;
    double total = 0;
    for (std::size_t t = 0; t < T; ++t) {
      if (a[t] > 0) pts.emplace_back(-c[t], a[t]);
      total += a[t];
    }
    std::sort(pts.begin(), pts.end());
    double acc = 0;
    for (const auto& [x, wt] : pts) {
      acc += wt;
      if (acc >= total / 2) return x;
    }
    return pts.back().first;
  }
  // Safeguarded Newton on the derivative, bracketed by the extreme offsets.
  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (std::size_t t = 0; t < T; ++t) {
    if (a[t] > 0) {
      lo = std::min(lo, -c[t]);
      hi = std::max(hi, -c[t]);
    }
  }
  auto deriv = [&](double xi, double* second) {
    double d1 = 0, d2 = 0;
    for (std::size_t t = 0; t < T; ++t) {
      const double r = xi + c[t];
      const double ar = std::abs(r);
      if (ar == 0) continue;
      d1 += a[t] * p * std::pow(ar, p - 1) * (r > 0 ? 1.0 : -1.0);
      d2 += a[t] * p * (p - 1) * std::pow(ar, p - 2);
    }
    *second = d2;
    return d1;
  };
  double xi = 0.5 * (lo + hi);
  for (int it = 0; it < 100 && hi - lo > 1e-15 * (1 + std::abs(xi)); ++it) {
    double d2 = 0;
    const double d1 = deriv(xi, &d2);
    if (d1 > 0) hi = xi; else lo = xi;
    double next = d2 > 0 ? xi - d1 / d2 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    xi = next;
  }
  return xi;
}

}  // namespace

ShadowingResult shadowing_window_optimize(const WeightSpec& w, const PseudoOrbit& z, OptimizerOptions opts) {
  ShadowingResult res;
  res.method = "window-optimizer";
  const std::int64_t N = z.window();
  const double p = w.p().as_double();
  const auto [zlo, zhi] = z.support();
  const auto steps = 2 * N + 2;  // t = 0 .. 2N+1, n = t - N
  if (zlo > zhi) {
    res.converged = true;
    res.flag = "ok";
    res.y.assign(static_cast<std::size_t>(steps), ShiftVector<double>{});
    return res;
  }
  // In nu-coordinates u = J^{-1} y the dynamics is pure translation: u_t(i) = x(i+t) + c_t(i),
  // x = u_0, with c_{t+1}(i) = c_t(i+1) + zeta_t(i), zeta_t = z_{t-N} / nu^{1/p}.
  const NuSpec nu = nu_from_weights(w);
  const std::int64_t m_lo = zlo + 1, m_hi = zhi + 2 * N + 1;
  const std::int64_t i_lo = m_lo - (steps - 1), i_hi = m_hi;
  std::vector<double> nuv(static_cast<std::size_t>(i_hi - i_lo + 1));
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    const double v = to_double(nu[i]);
    if (!std::isfinite(v) || v <= 0) {
      res.flag = "overflow";
      return res;
    }
    nuv[static_cast<std::size_t>(i - i_lo)] = v;
  }
  auto NU = [&](std::int64_t i) { return nuv[static_cast<std::size_t>(i - i_lo)]; };

  const auto T = static_cast<std::size_t>(steps);
  const auto M = static_cast<std::size_t>(m_hi - m_lo + 1);
  // off[m][t] = c_t(m - t), coef[m][t] = nu(m - t)
  std::vector<std::vector<double>> off(M, std::vector<double>(T, 0.0)), coef(M, std::vector<double>(T, 0.0));
  {
    Dense c{i_lo, std::vector<double>(static_cast<std::size_t>(i_hi - i_lo + 1), 0.0)};
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t m = 0; m < M; ++m) {
        const std::int64_t i = m_lo + static_cast<std::int64_t>(m) - static_cast<std::int64_t>(t);
        off[m][t] = c.get(i);
        coef[m][t] = NU(i);
      }
      if (t + 1 == T) break;
      Dense next{i_lo, std::vector<double>(c.v.size(), 0.0)};
      for (std::int64_t i = i_lo; i <= i_hi; ++i) next[i] = c.get(i + 1);
      for (const auto& [k, v] : z.at(static_cast<std::int64_t>(t) - N).entries()) {
        next[k] += v / std::pow(NU(k), 1.0 / p);
      }
      c = std::move(next);
    }
  }
  auto objective_terms = [&](const std::vector<double>& x, std::vector<double>& g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t t = 0; t < T; ++t) g[t] += coef[m][t] * std::pow(std::abs(x[m] + off[m][t]), p);
    }
    return *std::max_element(g.begin(), g.end());
  };

  std::vector<double> lambda(T, 1.0 / static_cast<double>(T)), x(M, 0.0), avg(M, 0.0), best_x(M, 0.0), g(T), a(T);
  double best_upper = objective_terms(x, g);  // x = 0 is feasible
  double best_lower = 0;
  std::int64_t it = 0;
  for (; it < opts.max_iterations; ++it) {
    double dual = 0;
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t t = 0; t < T; ++t) a[t] = lambda[t] * coef[m][t];
      x[m] = separable_argmin(a, off[m], p);
      for (std::size_t t = 0; t < T; ++t) dual += a[t] * std::pow(std::abs(x[m] + off[m][t]), p);
    }
    best_lower = std::max(best_lower, dual);
    const double upper = objective_terms(x, g);
    if (upper < best_upper) {
      best_upper = upper;
      best_x = x;
    }
    for (std::size_t m = 0; m < M; ++m) avg[m] += (x[m] - avg[m]) / static_cast<double>(it + 1);
    std::vector<double> g_avg(T);
    const double upper_avg = objective_terms(avg, g_avg);
    if (upper_avg < best_upper) {
      best_upper = upper_avg;
      best_x = avg;
    }
    if (std::pow(best_upper, 1.0 / p) - std::pow(best_lower, 1.0 / p) <= opts.relative_gap * std::pow(best_upper, 1.0 / p)) {
      ++it;
      break;
    }
    // exponentiated-gradient ascent on the dual, gradient g_t(x(lambda))
    const double eta = 2.0 / std::sqrt(static_cast<double>(it + 1));
    const double scale = upper > 0 ? upper : 1.0;
    double sum = 0;
    for (std::size_t t = 0; t < T; ++t) {
      lambda[t] *= std::exp(eta * (g[t] / scale - 1.0));
      sum += lambda[t];
    }
    for (auto& l : lambda) l = std::max(l / sum, 1e-300);
  }
  res.iterations = it;
  res.sup_y = std::pow(best_upper, 1.0 / p);
  res.lower_bound = std::pow(best_lower, 1.0 / p);
  res.ratio = z.sup_norm() > 0 ? res.sup_y / z.sup_norm() : 0.0;
  const bool closed = res.sup_y - res.lower_bound <= opts.relative_gap * res.sup_y;
  res.flag = closed ? "ok" : "lower-bound-only";
  res.converged = closed;
  // y_t(i) = nu(i)^{1/p} (x(i+t) + c_t(i))
  for (std::size_t t = 0; t < T; ++t) {
    ShiftVector<double> yt;
    for (std::size_t m = 0; m < M; ++m) {
      const std::int64_t i = m_lo + static_cast<std::int64_t>(m) - static_cast<std::int64_t>(t);
      yt.set(i, std::pow(coef[m][t], 1.0 / p) * (best_x[m] + off[m][t]));
    }
    res.y.push_back(std::move(yt));
  }
  return res;
}

// ---- probes --------------------------------------------------------------------------------

namespace {

std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Evidence e) { return e == Evidence::consistent_yes ? "consistent-yes" : "consistent-no"; }

namespace {

// ||B^n e_k||^p and ||B^{-n} e_k||^p from running products of w^p.
struct Growth {
  std::vector<double> forward, backward;  // index n = 0..n_max
};

Growth unit_orbit(const WeightSpec& w, std::int64_t k, std::int64_t n_max) {
  Growth g{{1.0}, {1.0}};
  double f = 1, b = 1;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    f *= to_double(w.power(k - n + 1));
    b /= to_double(w.power(k + n));
    g.forward.push_back(f);
    g.backward.push_back(b);
  }
  return g;
}

}  // namespace

ProbeResult expansivity_probe(const WeightSpec& w, std::int64_t n_max, double threshold) {
  const auto& s = w.powers();
  double min_growth = std::numeric_limits<double>::infinity(), max_growth = 0;
  std::int64_t weakest = 0;
  for (std::int64_t k = s.k_min() - static_cast<std::int64_t>(s.left_period().size());
       k <= s.k_max() + static_cast<std::int64_t>(s.right_period().size()); ++k) {
    const auto g = unit_orbit(w, k, n_max);
    const double growth = std::max(*std::max_element(g.forward.begin(), g.forward.end()),
                                   *std::max_element(g.backward.begin(), g.backward.end()));
    if (growth < min_growth) {
      min_growth = growth;
      weakest = k;
    }
    max_growth = std::max(max_growth, growth);
  }
  return {"expansivity", min_growth >= threshold ? Evidence::consistent_yes : Evidence::consistent_no, min_growth,
          "min growth at e_" + std::to_string(weakest) + ", max growth " + show(max_growth)};
}

bool uniform_expansivity_probe_at(const WeightSpec& w, const Rational& c, std::int64_t n) {
  const auto& s = w.powers();
  const double cp = std::pow(to_double(c), w.p().as_double()) * (1.0 - 1e-12);
  for (std::int64_t k = s.k_min() - n - static_cast<std::int64_t>(s.left_period().size());
       k <= s.k_max() + n + static_cast<std::int64_t>(s.right_period().size()); ++k) {
    const auto g = unit_orbit(w, k, n);
    if (std::max(g.forward.back(), g.backward.back()) < cp) return false;
  }
  return true;
}

ProbeResult uniform_expansivity_probe(const WeightSpec& w, const Rational& c, std::int64_t n_max) {
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (uniform_expansivity_probe_at(w, c, n)) {
      return {"uniform-expansivity", Evidence::consistent_yes, static_cast<double>(n), "all probes pass at n=" + std::to_string(n)};
    }
  }
  return {"uniform-expansivity", Evidence::consistent_no, 0.0, "no n <= " + std::to_string(n_max) + " passes every probe"};
}

SweepResult hypercyclicity_sweep(const NuSpec& nu, const std::vector<Rational>& eps_list,
                                 const std::vector<std::int64_t>& N_list, std::int64_t k_cap, const Rational& mu_w) {
  SweepResult out;
  std::size_t found = 0;
  for (const auto& eps : eps_list) {
    for (const auto N : N_list) {
      SweepRow row{eps, N, std::nullopt};
      for (std::int64_t k = 1; k <= k_cap && !row.k; ++k) {
        Rational plus(0), minus(0);
        for (std::int64_t j = -N; j <= N; ++j) {
          plus += nu[k + j];
          minus += nu[-k + j];
        }
        if (plus * mu_w < eps && minus * mu_w < eps) row.k = k;
      }
      if (row.k) ++found;
      out.rows.push_back(row);
    }
  }
  const bool all = found == out.rows.size();
  out.summary = {"hypercyclicity-sweep", all ? Evidence::consistent_yes : Evidence::consistent_no,
                 static_cast<double>(found),
                 std::to_string(found) + " of " + std::to_string(out.rows.size()) + " (eps, N) pairs have a witness"};
  return out;
}

namespace {

// Best (peak, later trough) pair of a ratio sequence, scored by min(log peak, -log trough).
OrbitWindow best_pair(const std::vector<double>& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> suffix_min(n);
  suffix_min[n - 1] = n - 1;
  for (std::size_t j = n - 1; j-- > 0;) suffix_min[j] = r[j] < r[suffix_min[j + 1]] ? j : suffix_min[j + 1];
  OrbitWindow best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t t = suffix_min[j + 1];
    const double score = std::min(std::log2(r[j]), -std::log2(r[t]));
    if (score > best_score) {
      best_score = score;
      best = {r[j], r[t], static_cast<std::int64_t>(j), static_cast<std::int64_t>(t)};
    }
  }
  return best;
}

}  // namespace

OrbitWindow orbit_window(const WeightSpec& w, const ShiftVector<double>& x, std::int64_t N) {
  if (x.empty()) throw ValidationError("zero vector is not a candidate", "x");
  if (N < 1) throw ValidationError("window must be >= 1", "N");
  const double base = norm_p(x, w.p());
  std::vector<double> r;
  ShiftVector<double> cur = x;
  for (std::int64_t n = 0; n <= N; ++n) {
    r.push_back(norm_p(cur, w.p()) / base);
    cur = apply_Bw(w, cur, 1);
  }
  return best_pair(r);
}

ProbeResult li_yorke_probe(const WeightSpec& w, const NuSpec& nu, std::int64_t N) {
  // Rank e_k, k in [0, N], by ||B^n e_k||^p = nu(k - n)/nu(k).
  std::int64_t best_k = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k <= N; ++k) {
    std::vector<double> r;
    for (std::int64_t n = 0; n <= N; ++n) r.push_back(to_double(nu[k - n] / nu[k]));
    const auto pair = best_pair(r);
    const double score = std::min(std::log2(pair.peak), -std::log2(pair.trough_after));
    if (score > best_score) {
      best_score = score;
      best_k = k;
    }
  }
  const auto win = orbit_window(w, unit_vector<double>(best_k), N);
  const double hi = std::exp2(static_cast<double>(N) / 8), lo = std::exp2(-static_cast<double>(N) / 8);
  const bool irregular = win.peak >= hi && win.trough_after <= lo;
  return {"li-yorke", irregular ? Evidence::consistent_yes : Evidence::consistent_no,
          std::min(std::log2(win.peak), -std::log2(win.trough_after)),
          "e_" + std::to_string(best_k) + ": peak " + show(win.peak) + " at n=" + std::to_string(win.peak_n) +
              ", then " + show(win.trough_after) + " at n=" + std::to_string(win.trough_n)};
}

}  // namespace shiftlike
