#pragma once

// Finite-window evidence for the classifier's verdicts. Evidence is never authoritative:
// the probes report whether a truncation looks like a yes or a no.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftlike/classifier.hpp"
#include "shiftlike/core_model.hpp"
#include "shiftlike/operators.hpp"

namespace shiftlike {

/// Perturbations z_n for n in [-N, N].
class PseudoOrbit {
 public:
  PseudoOrbit(std::int64_t N, std::vector<ShiftVector<double>> z, const Exponent& p);

  /// z_n = e_0 for every n.
  static PseudoOrbit constant_unit(std::int64_t N, const Exponent& p);
  /// Random unit-norm z_n supported on |k| <= band (band <= N), seeded.
  static PseudoOrbit random(std::int64_t N, std::int64_t band, std::uint64_t seed, const Exponent& p);

  std::int64_t window() const noexcept { return N_; }
  const ShiftVector<double>& at(std::int64_t n) const { return z_.at(static_cast<std::size_t>(n + N_)); }
  /// sup_n ||z_n||_p (the norm, not its p-th power).
  double sup_norm() const noexcept { return sup_; }
  /// Smallest and largest index touched by any z_n; (0, -1) when all vanish.
  std::pair<std::int64_t, std::int64_t> support() const;

 private:
  std::int64_t N_;
  std::vector<ShiftVector<double>> z_;
  double sup_ = 0;
};

struct ShadowingResult {
  std::string method;  // "splitting" or "window-optimizer"
  bool converged = false;
  std::string flag;    // "ok", "no-splitting", "residual", "lower-bound-only", "overflow"
  /// y_n for n in [-N, N+1] (index n + N); empty unless converged or optimizer output.
  std::vector<ShiftVector<double>> y;
  double sup_y = 0;
  /// sup||y|| / sup||z|| (0 when z vanishes).
  double ratio = 0;
  /// Optimizer only: certified lower bound on min sup||y|| over all exact orbits.
  double lower_bound = 0;
  std::int64_t iterations = 0;
};

/// Largest |entry| of y_{n+1} - B_w y_n - z_n over the window, relative to 1 + sup |y|.
double recurrence_residual(const WeightSpec& w, const PseudoOrbit& z, const std::vector<ShiftVector<double>>& y);

/// Bounded solution from the invariant splitting of the shadowing condition that holds
/// (stable part summed forward, unstable part summed backward). Non-convergent when no
/// condition holds.
ShadowingResult shadowing_solve_splitting(const WeightSpec& w, const PseudoOrbit& z);

struct OptimizerOptions {
  std::int64_t max_iterations = 4000;
  double relative_gap = 1e-3;
};

/// min over y_{-N} of sup_n ||y_n|| subject to y_{n+1} = B_w y_n + z_n on the window,
/// by Lagrangian duality. `lower_bound` is always valid; `flag` is "lower-bound-only"
/// when the duality gap did not close within the iteration cap.
ShadowingResult shadowing_window_optimize(const WeightSpec& w, const PseudoOrbit& z, OptimizerOptions opts = {});

enum class Evidence { consistent_yes, consistent_no };
std::string_view to_string(Evidence e);

struct ProbeResult {
  std::string probe;
  Evidence evidence;
  double statistic;  // probe-specific headline number
  std::string detail;
};

/// Probes e_k over the core widened by one period: growth_k = sup_{|n| <= n_max} ||B^n e_k||^p.
ProbeResult expansivity_probe(const WeightSpec& w, std::int64_t n_max, double threshold = 1e6);

/// For one n: whether max(||B^n e_k||, ||B^{-n} e_k||) >= c for every probe e_k, k over the
/// core widened by n plus one period.
bool uniform_expansivity_probe_at(const WeightSpec& w, const Rational& c, std::int64_t n);
/// Scans n = 1..n_max; consistent-yes at the first n passing every probe.
ProbeResult uniform_expansivity_probe(const WeightSpec& w, const Rational& c, std::int64_t n_max);

struct SweepRow {
  Rational eps;
  std::int64_t N;
  std::optional<std::int64_t> k;
};
struct SweepResult {
  std::vector<SweepRow> rows;
  ProbeResult summary;
};
/// For each (eps, N): least k in [1, k_cap] with sum_{|j|<=N} nu(+-k + j) mu(W) < eps on both signs.
SweepResult hypercyclicity_sweep(const NuSpec& nu, const std::vector<Rational>& eps_list,
                                 const std::vector<std::int64_t>& N_list, std::int64_t k_cap = 64,
                                 const Rational& mu_w = Rational(1));

struct OrbitWindow {
  double peak = 0;            // max_{n <= N} ||B^n x||^p / ||x||^p
  double trough_after = 0;    // min over n after the peak
  std::int64_t peak_n = 0;
  std::int64_t trough_n = 0;
};
/// Orbit statistics of a user vector over n in [0, N], from definitional iteration.
/// Throws ValidationError for the zero vector.
OrbitWindow orbit_window(const WeightSpec& w, const ShiftVector<double>& x, std::int64_t N);

/// Greedy search over single-coordinate candidates e_k, k in [0, N], ranked with nu, then
/// evaluated definitionally. consistent-yes when the orbit rises to 2^{N/8} and later falls
/// to 2^{-N/8}.
ProbeResult li_yorke_probe(const WeightSpec& w, const NuSpec& nu, std::int64_t N);

}  // namespace shiftlike
