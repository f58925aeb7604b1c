#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "shiftlike/rational.hpp"
#include "shiftlike/sequence.hpp"

namespace shiftlike {

/// Weights of a backward shift on l^p(Z), stored as the exact p-th powers w_k^p.
class WeightSpec {
 public:
  WeightSpec(Exponent p, PeriodicSequence powers);

  /// Takes the weights w_k themselves and raises them to the p-th power.
  /// Throws ValidationError if some w_k^p is not rational.
  static WeightSpec from_weights(Exponent p, const PeriodicSequence& weights);

  const Exponent& p() const noexcept { return p_; }
  const PeriodicSequence& powers() const noexcept { return powers_; }
  const Rational& power(std::int64_t k) const { return powers_[k]; }
  /// Floating-point view of w_k.
  double weight(std::int64_t k) const;

  /// Per-period products of w^p over the left and right tails.
  Rational left_product() const { return powers_.left_product(); }
  Rational right_product() const { return powers_.right_product(); }

  friend bool operator==(const WeightSpec& a, const WeightSpec& b) {
    return a.p_ == b.p_ && a.powers_ == b.powers_;
  }

 private:
  Exponent p_;
  PeriodicSequence powers_;
};

/// Atomic model of a dissipative system generated by W = B_1 u ... u B_m.
/// ratios(i)[k] = mu(f^k B_i) / mu(f^{k-1} B_i).
class DissipativeModel {
 public:
  const Exponent& p() const noexcept { return p_; }
  std::size_t atom_count() const noexcept { return measures_.size(); }
  const std::vector<Rational>& atom_measures() const noexcept { return measures_; }
  const std::vector<PeriodicSequence>& ratio_seqs() const noexcept { return ratios_; }
  const Rational& total_measure() const noexcept { return total_; }

  /// mu(f^k B_i).
  Rational cell_measure(std::int64_t k, std::size_t i) const;
  /// mu(f^k W).
  Rational image_measure(std::int64_t k) const;

  /// Smallest k_min and largest k_max over the atom cores.
  std::int64_t core_lo() const noexcept { return core_lo_; }
  std::int64_t core_hi() const noexcept { return core_hi_; }
  /// lcm of the atoms' left (resp. right) period lengths.
  std::size_t left_lcm() const noexcept { return left_lcm_; }
  std::size_t right_lcm() const noexcept { return right_lcm_; }

 private:
  friend DissipativeModel build_model(Exponent p, std::vector<Rational> atom_measures,
                                      std::vector<PeriodicSequence> atom_ratio_seqs);
  DissipativeModel(Exponent p, std::vector<Rational> measures, std::vector<PeriodicSequence> ratios);

  Exponent p_;
  std::vector<Rational> measures_;
  std::vector<PeriodicSequence> ratios_;
  Rational total_;
  std::int64_t core_lo_ = 0;
  std::int64_t core_hi_ = 0;
  std::size_t left_lcm_ = 1;
  std::size_t right_lcm_ = 1;
};

/// nu(i) = mu(f^i W) / mu(W): explicit on [k_min, k_max] (a window containing 0, nu(0) = 1),
/// geometric with periodic step ratios outside it.
///   left_ratios[j]:  nu(k_min-1-j) / nu(k_min-j)   (periodic in j)
///   right_ratios[j]: nu(k_max+1+j) / nu(k_max+j)   (periodic in j)
class NuSpec {
 public:
  NuSpec(std::int64_t k_min, std::vector<Rational> core, std::vector<Rational> left_ratios,
         std::vector<Rational> right_ratios);

  Rational operator[](std::int64_t k) const;

  std::int64_t k_min() const noexcept { return k_min_; }
  std::int64_t k_max() const noexcept { return k_min_ + static_cast<std::int64_t>(core_.size()) - 1; }
  const std::vector<Rational>& core() const noexcept { return core_; }
  const std::vector<Rational>& left_ratios() const noexcept { return left_; }
  const std::vector<Rational>& right_ratios() const noexcept { return right_; }

  /// Growth of nu over one left period moving toward -inf, and over one right period
  /// moving toward +inf. nu -> 0 on a side iff the corresponding rate is < 1.
  Rational left_rate() const;
  Rational right_rate() const;

  friend bool operator==(const NuSpec& a, const NuSpec& b);

 private:
  std::int64_t k_min_;
  std::vector<Rational> core_;
  std::vector<Rational> left_;
  std::vector<Rational> right_;
};

/// Validates and builds a model. Rejects nonpositive data, an empty atom list, p < 1 and
/// atoms whose tails grow at different rates (their distortion constant is unbounded).
DissipativeModel build_model(Exponent p, std::vector<Rational> atom_measures,
                             std::vector<PeriodicSequence> atom_ratio_seqs);

/// Minimal K >= 1 with (1/K) nu(k) <= mu(f^k B) / mu(B) <= K nu(k) for all k and all B in W.
ExtendedRational distortion_constant(const DissipativeModel& model);

/// Single atom whose distortion ratio mu(f^k B_i)/mu(B_i)/nu(k) is extremal, with its k.
struct DistortionWitness {
  std::size_t atom = 0;
  std::int64_t k = 0;
  Rational constant;
};
DistortionWitness distortion_witness(const DissipativeModel& model);

WeightSpec weights_from_model(const DissipativeModel& model);
NuSpec nu_from_model(const DissipativeModel& model);
NuSpec nu_from_weights(const WeightSpec& w);
WeightSpec weights_from_nu(const NuSpec& nu, const Exponent& p);
/// Canonical single-atom model with mu(W) = 1 and mu(f^k W) = nu(k).
DissipativeModel model_from_weights(const WeightSpec& w);

/// Sum of nu over Z; +inf unless both tail rates are < 1.
ExtendedRational nu_total(const NuSpec& nu);
/// mu(X) = mu(W) * nu(Z).
ExtendedRational mu_total(const DissipativeModel& model);

}  // namespace shiftlike
