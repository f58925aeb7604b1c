#include "shiftlike/classifier.hpp"

#include <algorithm>
#include <numeric>

#include "shiftlike/errors.hpp"

namespace shiftlike {

namespace {

constexpr std::array<std::string_view, kPropertyCount> kNames = {
    "li_yorke", "hypercyclic", "mixing", "chaotic", "frequently_hypercyclic",
    "expansive", "uniformly_expansive", "shadowing", "generalized_hyperbolic",
};

std::string str(const Rational& r) { return shiftlike::to_string(r); }
std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(std::size_t v) { return std::to_string(v); }

std::string_view cmp1(const Rational& q) { return q < 1 ? "<1" : (q > 1 ? ">1" : "=1"); }

Certificate rate_certificate(std::string kind, const NuSpec& nu) {
  const auto r = nu_rates(nu);
  return {std::move(kind),
          {{"q_left", str(r.left)},
           {"left_period", str(r.left_len)},
           {"left_anchor", str(nu.k_min())},
           {"q_right", str(r.right)},
           {"right_period", str(r.right_len)},
           {"right_anchor", str(nu.k_max())}}};
}

PropertyResult make(Property p, bool yes, Certificate cert) {
  return {p, yes ? Verdict::yes : Verdict::no, std::move(cert)};
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Property p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Property> parse_property(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllProperties[i];
  }
  return std::nullopt;
}

const std::string& Certificate::get(std::string_view key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  throw std::out_of_range("certificate has no field " + std::string(key));
}

std::string Certificate::summary() const {
  std::string s = kind + "(";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) s += ";";
    s += fields[i].first + "=" + fields[i].second;
  }
  return s + ")";
}

TailRates tail_rates(const WeightSpec& w) {
  return {w.left_product(), w.powers().left_period().size(), w.right_product(), w.powers().right_period().size()};
}

NuRates nu_rates(const NuSpec& nu) {
  return {nu.left_rate(), nu.left_ratios().size(), nu.right_rate(), nu.right_ratios().size()};
}

// ---- nu-side criteria ----------------------------------------------------------------------

PropertyResult is_li_yorke(const NuSpec& nu) {
  // (a) liminf_{n -> -inf} nu(n) = 0   <=>  q_left < 1
  // (b) sup_{h, n >= 0} nu(h)/nu(h+n) = inf  <=>  q_right < 1 or q_left > 1
  const auto r = nu_rates(nu);
  const bool a = r.left < 1;
  const bool b = r.right < 1 || r.left > 1;
  auto cert = rate_certificate(a && b ? "decaying-tails" : "tail-rates", nu);
  cert.fields.emplace_back("a", a ? "holds" : "fails");
  cert.fields.emplace_back("b", b ? "holds" : "fails");
  return make(Property::li_yorke, a && b, std::move(cert));
}

PropertyResult is_hypercyclic(const NuSpec& nu) {
  const auto r = nu_rates(nu);
  return make(Property::hypercyclic, r.left < 1 && r.right < 1, rate_certificate("tail-rates", nu));
}

PropertyResult is_mixing(const NuSpec& nu) {
  const auto r = nu_rates(nu);
  return make(Property::mixing, r.left < 1 && r.right < 1, rate_certificate("tail-rates", nu));
}

PropertyResult is_chaotic_fh(const NuSpec& nu, Property as) {
  const auto total = nu_total(nu);
  if (total.is_finite()) {
    auto cert = rate_certificate("finite-series", nu);
    cert.fields.emplace_back("sum", str(total.value()));
    return make(as, true, std::move(cert));
  }
  const auto r = nu_rates(nu);
  auto cert = rate_certificate("divergent-tail", nu);
  cert.fields.emplace_back("side", r.left >= 1 ? "left" : "right");
  return make(as, false, std::move(cert));
}

PropertyResult is_expansive(const NuSpec& nu) {
  const auto r = nu_rates(nu);
  if (r.left > 1 || r.right > 1) {
    auto cert = rate_certificate("growing-tail", nu);
    cert.fields.emplace_back("side", r.left > 1 ? "left" : "right");
    return make(Property::expansive, true, std::move(cert));
  }
  // Both tails are nonincreasing over full periods, so the sup sits in this window.
  Rational sup(0);
  for (std::int64_t k = nu.k_min() - static_cast<std::int64_t>(r.left_len);
       k <= nu.k_max() + static_cast<std::int64_t>(r.right_len); ++k) {
    sup = std::max(sup, nu[k]);
  }
  auto cert = rate_certificate("bounded", nu);
  cert.fields.emplace_back("sup", str(sup));
  return make(Property::expansive, false, std::move(cert));
}

std::int64_t ue_search_bound(const NuSpec& nu) {
  const auto span = nu.k_max() - nu.k_min() + 1;
  const auto period = static_cast<std::int64_t>(std::lcm(nu.left_ratios().size(), nu.right_ratios().size()));
  return span + 4 * period + 8;
}

std::int64_t ue_extended_bound(const NuSpec& nu) { return 8 * ue_search_bound(nu) + 64; }

bool ue_holds_for(const NuSpec& nu, const Exponent& p, const Rational& c, std::int64_t n) {
  // For i below k_min - n (resp. above k_max + n) the three indices i - n, i, i + n all lie
  // in one tail, where the ratios nu(i +- n)/nu(i) repeat with the tail period. One period
  // past each side therefore decides every i.
  const auto L = static_cast<std::int64_t>(nu.left_ratios().size());
  const auto R = static_cast<std::int64_t>(nu.right_ratios().size());
  for (std::int64_t i = nu.k_min() - n - L; i <= nu.k_max() + n + R; ++i) {
    const Rational here = nu[i];
    const Rational best = std::max(nu[i - n], nu[i + n]);
    if (!at_least_power(Rational(best / here), c, p)) return false;
  }
  return true;
}

PropertyResult is_uniformly_expansive(const NuSpec& nu, const Exponent& p, const Rational& c) {
  if (c <= 1) throw ValidationError("c must be > 1, got " + str(c), "c");
  const auto r = nu_rates(nu);
  const Property prop = Property::uniformly_expansive;
  if (r.left == 1 || r.right == 1) {
    // nu is periodic on a unit-rate tail: at a per-period maximum far out in that tail,
    // nu(i +- n) <= nu(i) whenever i +- n stay in the tail, for every n.
    auto cert = rate_certificate("unit-rate-tail", nu);
    cert.fields.emplace_back("side", r.left == 1 ? "left" : "right");
    return make(prop, false, std::move(cert));
  }
  if (r.left < 1 && r.right < 1) {
    // nu -> 0 on both sides: at a global maximum i*, nu(i* +- n) <= nu(i*) < c^p nu(i*).
    std::int64_t arg = nu.k_min();
    Rational best = nu[arg];
    for (std::int64_t k = nu.k_min() - static_cast<std::int64_t>(r.left_len);
         k <= nu.k_max() + static_cast<std::int64_t>(r.right_len); ++k) {
      if (nu[k] > best) {
        best = nu[k];
        arg = k;
      }
    }
    auto cert = rate_certificate("global-max", nu);
    cert.fields.emplace_back("i", str(arg));
    cert.fields.emplace_back("nu", str(best));
    return make(prop, false, std::move(cert));
  }
  // Some tail grows and neither is flat: a witness exists; find the least one.
  const auto bound = ue_search_bound(nu);
  const auto extended = ue_extended_bound(nu);
  for (std::int64_t n = 1; n <= extended; ++n) {
    if (ue_holds_for(nu, p, c, n)) {
      Certificate cert{"witness-n", {{"n", str(n)}, {"c", str(c)}, {"p", str(p.value())}}};
      if (n > bound) cert.fields.emplace_back("beyond_base_bound", str(bound));
      return make(prop, true, std::move(cert));
    }
  }
  return {prop, Verdict::inconclusive, Certificate{"search-exhausted", {{"bound", str(extended)}}}};
}

// ---- w-side criteria -----------------------------------------------------------------------

namespace {

Certificate gm_certificate(std::string kind, const TailRates& t) {
  return {std::move(kind),
          {{"gm_left", str(t.gm_left)},
           {"left_period", str(t.left_len)},
           {"gm_right", str(t.gm_right)},
           {"right_period", str(t.right_len)}}};
}

// 'A', 'B', 'C' or 0.
char shadowing_condition(const TailRates& t) {
  if (t.gm_left < 1 && t.gm_right < 1) return 'A';
  if (t.gm_left > 1 && t.gm_right > 1) return 'B';
  if (t.gm_left < 1 && t.gm_right > 1) return 'C';
  return 0;
}

PropertyResult hyperbolic_verdict(const WeightSpec& w, Property prop) {
  const auto t = tail_rates(w);
  const char cond = shadowing_condition(t);
  if (cond != 0) {
    auto cert = gm_certificate("condition", t);
    cert.fields.insert(cert.fields.begin(), {"condition", std::string(1, cond)});
    if (prop == Property::generalized_hyperbolic) {
      cert.fields.emplace_back("splitting", cond == 'A' ? "trivial-stable" : (cond == 'B' ? "trivial-unstable" : "index-0"));
    }
    return make(prop, true, std::move(cert));
  }
  if (t.gm_left == 1 || t.gm_right == 1) {
    auto cert = gm_certificate("unit-rate", t);
    cert.fields.emplace_back("side", t.gm_left == 1 ? "left" : "right");
    return make(prop, false, std::move(cert));
  }
  return make(prop, false, gm_certificate("mirrored", t));
}

}  // namespace

PropertyResult has_shadowing(const WeightSpec& w) { return hyperbolic_verdict(w, Property::shadowing); }

PropertyResult is_generalized_hyperbolic(const WeightSpec& w) {
  return hyperbolic_verdict(w, Property::generalized_hyperbolic);
}

// ---- reports -------------------------------------------------------------------------------

namespace {

PropertyReport assemble(const NuSpec& nu, const WeightSpec& w, const Rational& c) {
  PropertyReport report{c, {}, {}};
  auto put = [&](PropertyResult r) { report.results[static_cast<std::size_t>(r.property)] = std::move(r); };
  put(is_li_yorke(nu));
  put(is_hypercyclic(nu));
  put(is_mixing(nu));
  put(is_chaotic_fh(nu, Property::chaotic));
  put(is_chaotic_fh(nu, Property::frequently_hypercyclic));
  put(is_expansive(nu));
  put(is_uniformly_expansive(nu, w.p(), c));
  put(has_shadowing(w));
  put(is_generalized_hyperbolic(w));
  report.notes.push_back(
      "hypercyclic and mixing coincide for eventually periodic weights; this need not hold for general weights");
  report.notes.push_back("chaotic and frequently_hypercyclic share one verdict");
  return report;
}

}  // namespace

PropertyReport classify(const WeightSpec& w, const Rational& c) { return assemble(nu_from_weights(w), w, c); }

PropertyReport classify(const DissipativeModel& model, const Rational& c) {
  const auto w = weights_from_model(model);
  const auto nu = nu_from_model(model);
  if (!(nu_from_weights(w) == nu)) {
    throw InvariantViolation("nu_from_weights(weights_from_model(model)) != nu_from_model(model)");
  }
  return assemble(nu, w, c);
}

// ---- independent checking ------------------------------------------------------------------

namespace {

std::int64_t to_i64(const std::string& s) { return std::stoll(s); }

// Rate of nu over one period on each side, read off directly from lookups two periods deep.
struct MeasuredRates {
  Rational left, right;
  bool geometric;
};

MeasuredRates measure(const NuSpec& nu, const Certificate& cert) {
  const auto L = to_i64(cert.get("left_period"));
  const auto R = to_i64(cert.get("right_period"));
  const auto a = to_i64(cert.get("left_anchor"));
  const auto b = to_i64(cert.get("right_anchor"));
  MeasuredRates m{nu[a - L] / nu[a], nu[b + R] / nu[b], true};
  m.geometric = nu[a - 2 * L] / nu[a - L] == m.left && nu[b + 2 * R] / nu[b + R] == m.right &&
                str(m.left) == cert.get("q_left") && str(m.right) == cert.get("q_right");
  return m;
}

std::optional<std::string> expect(bool ok, const std::string& why) {
  if (ok) return std::nullopt;
  return why;
}

bool direct_ue(const NuSpec& nu, const Exponent& p, const Rational& c, std::int64_t n) {
  const Rational cp_num = pow(c, static_cast<std::int64_t>(p.numerator()));
  const auto b = static_cast<std::int64_t>(p.denominator());
  const auto L = static_cast<std::int64_t>(nu.left_ratios().size());
  const auto R = static_cast<std::int64_t>(nu.right_ratios().size());
  for (std::int64_t i = nu.k_min() - n - 2 * L; i <= nu.k_max() + n + 2 * R; ++i) {
    const Rational lhs = pow(std::max(nu[i - n], nu[i + n]), b);
    if (lhs < cp_num * pow(nu[i], b)) return false;
  }
  return true;
}

Rational direct_gm(const WeightSpec& w, bool left) {
  const auto& s = w.powers();
  Rational g(1);
  if (left) {
    for (std::int64_t t = s.k_min() - static_cast<std::int64_t>(s.left_period().size()); t < s.k_min(); ++t) g *= s[t];
  } else {
    for (std::int64_t t = s.k_max() + 1; t <= s.k_max() + static_cast<std::int64_t>(s.right_period().size()); ++t) g *= s[t];
  }
  return g;
}

}  // namespace

std::optional<std::string> verify_certificate(const PropertyResult& r, const NuSpec& nu, const WeightSpec& w,
                                              const Rational& c) {
  const auto& cert = r.certificate;
  const bool yes = r.verdict == Verdict::yes;
  try {
    switch (r.property) {
      case Property::li_yorke:
      case Property::hypercyclic:
      case Property::mixing: {
        const auto m = measure(nu, cert);
        if (!m.geometric) return "tail rates do not match nu";
        return expect(yes == (m.left < 1 && m.right < 1), "verdict contradicts tail rates");
      }
      case Property::chaotic:
      case Property::frequently_hypercyclic: {
        const auto m = measure(nu, cert);
        if (!m.geometric) return "tail rates do not match nu";
        if (!yes) return expect(m.left >= 1 || m.right >= 1, "both tails decay, series converges");
        if (!(m.left < 1 && m.right < 1)) return "a tail does not decay";
        const auto L = to_i64(cert.get("left_period"));
        const auto R = to_i64(cert.get("right_period"));
        const auto a = to_i64(cert.get("left_anchor"));
        const auto b = to_i64(cert.get("right_anchor"));
        Rational sum(0), left_block(0), right_block(0);
        for (std::int64_t k = a; k <= b; ++k) sum += nu[k];
        for (std::int64_t d = 1; d <= L; ++d) left_block += nu[a - d];
        for (std::int64_t d = 1; d <= R; ++d) right_block += nu[b + d];
        sum += left_block / (1 - m.left) + right_block / (1 - m.right);
        return expect(str(sum) == cert.get("sum"), "series value mismatch");
      }
      case Property::expansive: {
        const auto m = measure(nu, cert);
        if (!m.geometric) return "tail rates do not match nu";
        if (yes) return expect(m.left > 1 || m.right > 1, "no tail grows");
        Rational sup(0);
        for (std::int64_t k = nu.k_min() - 2 * to_i64(cert.get("left_period"));
             k <= nu.k_max() + 2 * to_i64(cert.get("right_period")); ++k) {
          sup = std::max(sup, nu[k]);
        }
        return expect(m.left <= 1 && m.right <= 1 && str(sup) == cert.get("sup"), "bounded claim not confirmed");
      }
      case Property::uniformly_expansive: {
        if (r.verdict == Verdict::inconclusive) return std::nullopt;
        if (yes) {
          const auto n = to_i64(cert.get("n"));
          return expect(n >= 1 && direct_ue(nu, w.p(), c, n), "witness n fails the dichotomy");
        }
        const auto m = measure(nu, cert);
        if (!m.geometric) return "tail rates do not match nu";
        if (cert.kind == "unit-rate-tail") {
          return expect(cert.get("side") == "left" ? m.left == 1 : m.right == 1, "tail is not flat");
        }
        if (cert.kind == "global-max") {
          const auto i = to_i64(cert.get("i"));
          if (!(m.left < 1 && m.right < 1)) return "tails do not both decay";
          for (std::int64_t k = nu.k_min() - 2 * to_i64(cert.get("left_period"));
               k <= nu.k_max() + 2 * to_i64(cert.get("right_period")); ++k) {
            if (nu[k] > nu[i]) return "claimed maximum is exceeded at " + str(k);
          }
          return std::nullopt;
        }
        return "unknown certificate kind " + cert.kind;
      }
      case Property::shadowing:
      case Property::generalized_hyperbolic: {
        const Rational gl = direct_gm(w, true);
        const Rational gr = direct_gm(w, false);
        if (str(gl) != cert.get("gm_left") || str(gr) != cert.get("gm_right")) return "rates do not match w";
        if (yes) {
          const auto& cond = cert.get("condition");
          if (cond == "A") return expect(gl < 1 && gr < 1, "condition A fails");
          if (cond == "B") return expect(gl > 1 && gr > 1, "condition B fails");
          if (cond == "C") return expect(gl < 1 && gr > 1, "condition C fails");
          return "unknown condition";
        }
        if (cert.kind == "unit-rate") return expect(gl == 1 || gr == 1, "no unit rate");
        if (cert.kind == "mirrored") return expect(gl > 1 && gr < 1, "not mirrored");
        return "unknown certificate kind " + cert.kind;
      }
    }
  } catch (const std::exception& e) {
    return std::string("malformed certificate: ") + e.what();
  }
  return "unknown property";
}

std::vector<std::string> hierarchy_violations(const PropertyReport& report) {
  std::vector<std::string> bad;
  auto v = [&](Property p) { return report[p].verdict; };
  auto implies = [&](Property a, Property b, const char* text) {
    if (v(a) == Verdict::yes && v(b) == Verdict::no) bad.emplace_back(text);
  };
  if (v(Property::chaotic) != v(Property::frequently_hypercyclic)) bad.emplace_back("chaotic != frequently_hypercyclic");
  implies(Property::chaotic, Property::mixing, "chaotic => mixing");
  implies(Property::mixing, Property::hypercyclic, "mixing => hypercyclic");
  implies(Property::hypercyclic, Property::li_yorke, "hypercyclic => li_yorke");
  implies(Property::uniformly_expansive, Property::expansive, "uniformly_expansive => expansive");
  const auto& sh = report[Property::shadowing];
  if (sh.verdict == Verdict::yes) {
    const auto& cond = sh.certificate.get("condition");
    if ((cond == "A" || cond == "B") && v(Property::generalized_hyperbolic) != Verdict::yes) {
      bad.emplace_back("condition A or B => generalized_hyperbolic");
    }
  }
  if (v(Property::generalized_hyperbolic) == Verdict::yes && sh.verdict == Verdict::no) {
    bad.emplace_back("generalized_hyperbolic => shadowing");
  }
  return bad;
}

}  // namespace shiftlike
