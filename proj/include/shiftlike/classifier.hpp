#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftlike/core_model.hpp"

namespace shiftlike {

enum class Verdict { yes, no, inconclusive };
std::string_view to_string(Verdict v);

enum class Property {
  li_yorke,
  hypercyclic,
  mixing,
  chaotic,
  frequently_hypercyclic,
  expansive,
  uniformly_expansive,
  shadowing,
  generalized_hyperbolic,
};
inline constexpr std::size_t kPropertyCount = 9;
inline constexpr std::array<Property, kPropertyCount> kAllProperties = {
    Property::li_yorke,  Property::hypercyclic,         Property::mixing,
    Property::chaotic,   Property::frequently_hypercyclic, Property::expansive,
    Property::uniformly_expansive, Property::shadowing,  Property::generalized_hyperbolic,
};
std::string_view to_string(Property p);
std::optional<Property> parse_property(std::string_view name);

/// Finite evidence behind a verdict. `kind` names the argument, `fields` hold its exact data.
struct Certificate {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string& get(std::string_view key) const;
  /// "kind(key=value;key=value)", free of commas so it fits a CSV cell.
  std::string summary() const;
};

struct PropertyResult {
  Property property;
  Verdict verdict;
  Certificate certificate;
};

/// Per-period products of w^p on each tail, with the period lengths. A product is < 1,
/// = 1 or > 1 exactly when the geometric mean of the weights over the period is.
struct TailRates {
  Rational gm_left;
  std::size_t left_len;
  Rational gm_right;
  std::size_t right_len;
};
TailRates tail_rates(const WeightSpec& w);

/// Rates of nu: q_left = nu(k - L)/nu(k) deep in the left tail, q_right = nu(k + R)/nu(k)
/// deep in the right tail. q_left = gm_left and q_right = 1/gm_right.
struct NuRates {
  Rational left;
  std::size_t left_len;
  Rational right;
  std::size_t right_len;
};
NuRates nu_rates(const NuSpec& nu);

PropertyResult is_li_yorke(const NuSpec& nu);
PropertyResult is_hypercyclic(const NuSpec& nu);
PropertyResult is_mixing(const NuSpec& nu);
/// Shared verdict for chaos and frequent hypercyclicity; `as` selects the label.
PropertyResult is_chaotic_fh(const NuSpec& nu, Property as = Property::chaotic);
PropertyResult is_expansive(const NuSpec& nu);
/// Requires c > 1 (ValidationError otherwise).
PropertyResult is_uniformly_expansive(const NuSpec& nu, const Exponent& p, const Rational& c);
PropertyResult has_shadowing(const WeightSpec& w);
PropertyResult is_generalized_hyperbolic(const WeightSpec& w);

/// Search limits for the uniform expansivity witness.
std::int64_t ue_search_bound(const NuSpec& nu);
std::int64_t ue_extended_bound(const NuSpec& nu);
/// The exact check "max(nu(i-n), nu(i+n)) >= c^p nu(i) for all i" for one n.
bool ue_holds_for(const NuSpec& nu, const Exponent& p, const Rational& c, std::int64_t n);

struct PropertyReport {
  Rational c;
  std::array<PropertyResult, kPropertyCount> results;
  std::vector<std::string> notes;

  const PropertyResult& operator[](Property p) const { return results[static_cast<std::size_t>(p)]; }
};

PropertyReport classify(const WeightSpec& w, const Rational& c = Rational(2));
/// Classifies through nu_from_model / weights_from_model. Throws InvariantViolation if the
/// two ingestion paths disagree on nu.
PropertyReport classify(const DissipativeModel& model, const Rational& c = Rational(2));

/// Recomputes a certificate from direct nu and w lookups and confirms it supports the
/// verdict. Returns an explanation on failure.
std::optional<std::string> verify_certificate(const PropertyResult& r, const NuSpec& nu, const WeightSpec& w,
                                              const Rational& c);

/// Implications every report must satisfy; returns the violated ones.
std::vector<std::string> hierarchy_violations(const PropertyReport& report);

}  // namespace shiftlike
