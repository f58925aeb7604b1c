#include "shiftlike/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftlike/errors.hpp"

namespace shiftlike {

// ---- WeightSpec ----------------------------------------------------------------------------

WeightSpec::WeightSpec(Exponent p, PeriodicSequence powers) : p_(std::move(p)), powers_(std::move(powers)) {}

WeightSpec WeightSpec::from_weights(Exponent p, const PeriodicSequence& weights) {
  const auto a = static_cast<std::int64_t>(p.numerator());
  const unsigned long b = p.denominator();
  auto raise = [&](const std::vector<Rational>& v, const char* field) {
    std::vector<Rational> out;
    for (std::size_t j = 0; j < v.size(); ++j) {
      auto r = exact_root(pow(v[j], a), b);
      if (!r) {
        throw ValidationError("w^p is not rational for w = " + to_string(v[j]) + ", p = " + to_string(p.value()),
                              std::string(field) + "[" + std::to_string(j) + "]");
      }
      out.push_back(*r);
    }
    return out;
  };
  PeriodicSequence powers(weights.k_min(), raise(weights.core(), "core"),
                          raise(weights.left_period(), "left_period"),
                          raise(weights.right_period(), "right_period"));
  return WeightSpec(std::move(p), std::move(powers));
}

double WeightSpec::weight(std::int64_t k) const {
  return std::pow(to_double(powers_[k]), 1.0 / p_.as_double());
}

// ---- DissipativeModel ----------------------------------------------------------------------

DissipativeModel::DissipativeModel(Exponent p, std::vector<Rational> measures,
                                   std::vector<PeriodicSequence> ratios)
    : p_(std::move(p)), measures_(std::move(measures)), ratios_(std::move(ratios)), total_(0) {
  core_lo_ = ratios_.front().k_min();
  core_hi_ = ratios_.front().k_max();
  for (std::size_t i = 0; i < ratios_.size(); ++i) {
    total_ += measures_[i];
    core_lo_ = std::min(core_lo_, ratios_[i].k_min());
    core_hi_ = std::max(core_hi_, ratios_[i].k_max());
    left_lcm_ = lcm_size(left_lcm_, ratios_[i].left_period().size());
    right_lcm_ = lcm_size(right_lcm_, ratios_[i].right_period().size());
  }
}

Rational DissipativeModel::cell_measure(std::int64_t k, std::size_t i) const {
  return measures_.at(i) * ratios_.at(i).anchored_product(k);
}

Rational DissipativeModel::image_measure(std::int64_t k) const {
  Rational m(0);
  for (std::size_t i = 0; i < measures_.size(); ++i) m += cell_measure(k, i);
  return m;
}

namespace {

// q_a^(1/len_a) == q_b^(1/len_b), decided as q_a^len_b == q_b^len_a.
bool same_rate(const Rational& qa, std::size_t la, const Rational& qb, std::size_t lb) {
  return pow(qa, static_cast<std::int64_t>(lb)) == pow(qb, static_cast<std::int64_t>(la));
}

}  // namespace

DissipativeModel build_model(Exponent p, std::vector<Rational> atom_measures,
                             std::vector<PeriodicSequence> atom_ratio_seqs) {
  if (atom_measures.empty()) throw ValidationError("at least one atom is required", "atoms");
  if (atom_ratio_seqs.size() != atom_measures.size()) {
    throw ValidationError("expected " + std::to_string(atom_measures.size()) + " ratio sequences, got " +
                              std::to_string(atom_ratio_seqs.size()),
                          "ratio_seqs");
  }
  for (std::size_t i = 0; i < atom_measures.size(); ++i) {
    atom_measures[i].canonicalize();
    if (atom_measures[i] <= 0) {
      throw ValidationError("atom measure must be positive, got " + to_string(atom_measures[i]),
                            "atoms[" + std::to_string(i) + "]");
    }
  }
  const auto& s0 = atom_ratio_seqs.front();
  for (std::size_t i = 1; i < atom_ratio_seqs.size(); ++i) {
    const auto& si = atom_ratio_seqs[i];
    const bool left_ok = same_rate(s0.left_product(), s0.left_period().size(), si.left_product(),
                                   si.left_period().size());
    const bool right_ok = same_rate(s0.right_product(), s0.right_period().size(), si.right_product(),
                                    si.right_period().size());
    if (left_ok && right_ok) continue;
    // Certificate: the ratio of the two atoms' normalized measures drifts geometrically.
    const std::int64_t probe = left_ok ? 40 : -40;
    const Rational drift = si.anchored_product(probe) / s0.anchored_product(probe);
    std::ostringstream msg;
    msg << (left_ok ? "right" : "left") << " tail rate of atom " << i << " differs from atom 0 ("
        << to_string(left_ok ? si.right_product() : si.left_product()) << " per "
        << (left_ok ? si.right_period().size() : si.left_period().size()) << " steps vs "
        << to_string(left_ok ? s0.right_product() : s0.left_product()) << " per "
        << (left_ok ? s0.right_period().size() : s0.left_period().size())
        << " steps); distortion is unbounded: at k = " << probe << " the ratio "
        << "mu(f^k B_" << i << ")/mu(B_" << i << ") : mu(f^k B_0)/mu(B_0) is already " << to_double(drift);
    throw ValidationError(msg.str(), "ratio_seqs[" + std::to_string(i) + "]");
  }
  return DissipativeModel(std::move(p), std::move(atom_measures), std::move(atom_ratio_seqs));
}

DistortionWitness distortion_witness(const DissipativeModel& model) {
  // Measurable subsets of W are unions of atoms. For B a union,
  //   mu(f^k B)/mu(B) = sum_{i in B} (mu(B_i)/mu(B)) * mu(f^k B_i)/mu(B_i),
  // a convex combination of the single-atom ratios, so the extremes over all B are taken
  // at single atoms.
  //
  // Beyond the cores the ratio rho_i(k) = (mu(f^k B_i)/mu(B_i)) / nu(k) is periodic in k
  // with the lcm period on each side: shifting k by a full lcm block multiplies every
  // atom's measure by the same factor (the builder enforced equal tail rates), so nu
  // scales by it too. One block past each end of the cores therefore covers all k.
  const std::int64_t lo = model.core_lo() - static_cast<std::int64_t>(model.left_lcm());
  const std::int64_t hi = model.core_hi() + static_cast<std::int64_t>(model.right_lcm());
  DistortionWitness best{0, 0, Rational(1)};
  for (std::int64_t k = lo; k <= hi; ++k) {
    const Rational nu = model.image_measure(k) / model.total_measure();
    for (std::size_t i = 0; i < model.atom_count(); ++i) {
      const Rational rho = model.ratio_seqs()[i].anchored_product(k) / nu;
      const Rational dev = rho >= 1 ? rho : Rational(1) / rho;
      if (dev > best.constant) best = {i, k, dev};
    }
  }
  return best;
}

ExtendedRational distortion_constant(const DissipativeModel& model) {
  return ExtendedRational(distortion_witness(model).constant);
}

// ---- NuSpec --------------------------------------------------------------------------------

NuSpec::NuSpec(std::int64_t k_min, std::vector<Rational> core, std::vector<Rational> left_ratios,
               std::vector<Rational> right_ratios)
    : k_min_(k_min), core_(std::move(core)), left_(std::move(left_ratios)), right_(std::move(right_ratios)) {
  if (left_.empty()) throw ValidationError("period must be nonempty", "left_ratios");
  if (right_.empty()) throw ValidationError("period must be nonempty", "right_ratios");
  if (k_min_ > 0 || k_max() < 0) throw ValidationError("core window must contain index 0", "k_min");
  for (auto* v : {&core_, &left_, &right_}) {
    for (auto& x : *v) {
      x.canonicalize();
      if (x <= 0) throw ValidationError("nu values and ratios must be positive, got " + to_string(x));
    }
  }
  if (core_[static_cast<std::size_t>(-k_min_)] != 1) {
    throw ValidationError("nu(0) must be 1", "core");
  }
}

namespace {

// Product of the first d entries of the periodic sequence `period`.
Rational periodic_prefix(const std::vector<Rational>& period, const Rational& full_product, std::int64_t d) {
  const auto L = static_cast<std::int64_t>(period.size());
  Rational r = pow(full_product, d / L);
  for (std::int64_t t = 0; t < d % L; ++t) r *= period[static_cast<std::size_t>(t)];
  return r;
}

Rational product_of(const std::vector<Rational>& v) {
  Rational r(1);
  for (const auto& x : v) r *= x;
  return r;
}

}  // namespace

Rational NuSpec::left_rate() const { return product_of(left_); }
Rational NuSpec::right_rate() const { return product_of(right_); }

Rational NuSpec::operator[](std::int64_t k) const {
  if (k < k_min_) return core_.front() * periodic_prefix(left_, left_rate(), k_min_ - k);
  if (k > k_max()) return core_.back() * periodic_prefix(right_, right_rate(), k - k_max());
  return core_[static_cast<std::size_t>(k - k_min_)];
}

bool operator==(const NuSpec& a, const NuSpec& b) {
  const auto L = static_cast<std::int64_t>(lcm_size(a.left_.size(), b.left_.size()));
  const auto R = static_cast<std::int64_t>(lcm_size(a.right_.size(), b.right_.size()));
  const std::int64_t lo = std::min(a.k_min(), b.k_min()) - L;
  const std::int64_t hi = std::max(a.k_max(), b.k_max()) + R;
  for (std::int64_t k = lo; k <= hi; ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

ExtendedRational nu_total(const NuSpec& nu) {
  const Rational qL = nu.left_rate();
  const Rational qR = nu.right_rate();
  if (qL >= 1 || qR >= 1) return ExtendedRational::infinity();
  Rational sum(0);
  for (const auto& v : nu.core()) sum += v;
  // Tail sum: edge * (c_1 + ... + c_L) / (1 - q), c_r = product of the first r ratios.
  auto tail = [](const Rational& edge, const std::vector<Rational>& ratios, const Rational& q) {
    Rational c(1), block(0);
    for (const auto& r : ratios) {
      c *= r;
      block += c;
    }
    return Rational(edge * block / (1 - q));
  };
  sum += tail(nu.core().front(), nu.left_ratios(), qL);
  sum += tail(nu.core().back(), nu.right_ratios(), qR);
  return ExtendedRational(sum);
}

ExtendedRational mu_total(const DissipativeModel& model) {
  return nu_total(nu_from_model(model)) * model.total_measure();
}

// ---- conversions ---------------------------------------------------------------------------

WeightSpec weights_from_model(const DissipativeModel& model) {
  // w_k^p = M(k-1)/M(k) is periodic below core_lo and above core_hi (see distortion_witness).
  auto seq = PeriodicSequence::sample(model.core_lo(), model.core_hi(), model.left_lcm(), model.right_lcm(),
                                      [&](std::int64_t k) {
                                        return Rational(model.image_measure(k - 1) / model.image_measure(k));
                                      });
  return WeightSpec(model.p(), std::move(seq));
}

namespace {

NuSpec nu_from_function(std::int64_t lo, std::int64_t hi, std::size_t left_len, std::size_t right_len,
                        const std::function<Rational(std::int64_t)>& nu) {
  lo = std::min<std::int64_t>(lo, 0);
  hi = std::max<std::int64_t>(hi, 0);
  std::vector<Rational> core, left, right;
  for (std::int64_t k = lo; k <= hi; ++k) core.push_back(nu(k));
  Rational prev = core.front();
  for (std::size_t j = 0; j < left_len; ++j) {
    Rational cur = nu(lo - 1 - static_cast<std::int64_t>(j));
    left.emplace_back(cur / prev);
    prev = cur;
  }
  prev = core.back();
  for (std::size_t j = 0; j < right_len; ++j) {
    Rational cur = nu(hi + 1 + static_cast<std::int64_t>(j));
    right.emplace_back(cur / prev);
    prev = cur;
  }
  return NuSpec(lo, std::move(core), std::move(left), std::move(right));
}

}  // namespace

NuSpec nu_from_model(const DissipativeModel& model) {
  return nu_from_function(model.core_lo() - 1, model.core_hi(), model.left_lcm(), model.right_lcm(),
                          [&](std::int64_t k) { return Rational(model.image_measure(k) / model.total_measure()); });
}

NuSpec nu_from_weights(const WeightSpec& w) {
  const auto& s = w.powers();
  return nu_from_function(s.k_min() - 1, s.k_max(), s.left_period().size(), s.right_period().size(),
                          [&](std::int64_t k) { return Rational(1 / s.anchored_product(k)); });
}

WeightSpec weights_from_nu(const NuSpec& nu, const Exponent& p) {
  auto seq = PeriodicSequence::sample(nu.k_min() + 1, nu.k_max(), nu.left_ratios().size(),
                                      nu.right_ratios().size(),
                                      [&](std::int64_t i) { return Rational(nu[i - 1] / nu[i]); });
  return WeightSpec(p, std::move(seq));
}

DissipativeModel model_from_weights(const WeightSpec& w) {
  return build_model(w.p(), {Rational(1)}, {w.powers().reciprocal()});
}

}  // namespace shiftlike
