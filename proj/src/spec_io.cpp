#include "shiftlike/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "shiftlike/errors.hpp"

namespace shiftlike {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class Reader {
 public:
  Reader(std::string_view text, NumberMode mode) : text_(text), mode_(mode) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    const auto top = field.substr(0, field.find_first_of("[."));
    std::string where;
    if (const auto line = line_of(top)) where = "line " + std::to_string(*line) + ": ";
    throw ValidationError(where + message, field);
  }

  Rational value(const json& j, const std::string& field) const {
    if (j.is_string()) {
      try {
        return parse_rational(j.get<std::string>());
      } catch (const ValidationError& e) {
        fail(field, e.what());
      }
    }
    if (j.is_number_integer()) {
      return j.is_number_unsigned() ? Rational(mpz_class(std::to_string(j.get<std::uint64_t>())))
                                    : Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
    }
    if (j.is_number_float()) {
      if (mode_ == NumberMode::exact) fail(field, "float literal in exact mode; write it as a string rational");
      return Rational(j.get<double>());
    }
    fail(field, "expected a rational, got " + std::string(j.type_name()));
  }

  std::vector<Rational> values(const json& obj, const std::string& key, const std::string& field) const {
    const std::string f = field + "." + key;
    if (!obj.contains(key)) fail(f, "missing");
    const auto& arr = obj.at(key);
    if (!arr.is_array()) fail(f, "expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(value(arr[i], f + "[" + std::to_string(i) + "]"));
    return out;
  }

  PeriodicSequence sequence(const json& j, const std::string& field) const {
    if (!j.is_object()) fail(field, "expected an object with k_min, core, left_period, right_period");
    for (const auto& [key, _] : j.items()) {
      if (key != "k_min" && key != "core" && key != "left_period" && key != "right_period") {
        fail(field + "." + key, "unknown field");
      }
    }
    if (!j.contains("k_min") || !j.at("k_min").is_number_integer()) fail(field + ".k_min", "expected an integer");
    const auto k_min = j.at("k_min").get<std::int64_t>();
    auto core = values(j, "core", field);
    auto left = values(j, "left_period", field);
    auto right = values(j, "right_period", field);
    try {
      return PeriodicSequence(k_min, std::move(core), std::move(left), std::move(right));
    } catch (const ValidationError& e) {
      fail(field + "." + e.field(), strip(e));
    }
  }

  static std::string strip(const ValidationError& e) {
    const std::string what = e.what();
    const auto prefix = e.field() + ": ";
    return !e.field().empty() && what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
  }

 private:
  std::optional<std::size_t> line_of(const std::string& key) const {
    if (key.empty()) return std::nullopt;
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return std::nullopt;
    return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  std::string_view text_;
  NumberMode mode_;
};

}  // namespace

SystemSpec parse_spec(std::string_view text, NumberMode mode) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto ? upto - 1 : 0), '\n');
    throw ValidationError("line " + std::to_string(line) + ": malformed JSON: " + e.what(), "(document)");
  }
  const Reader r(text, mode);
  if (!j.is_object()) r.fail("(document)", "expected a JSON object");
  static const std::vector<std::string> known = {"id", "p", "atoms", "ratio_seqs", "weights", "weight_powers"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) r.fail(key, "unknown field");
  }

  std::string id;
  if (j.contains("id")) {
    if (!j.at("id").is_string()) r.fail("id", "expected a string");
    id = j.at("id").get<std::string>();
  }
  if (!j.contains("p")) r.fail("p", "missing");
  const Rational p_value = r.value(j.at("p"), "p");
  std::optional<Exponent> p;
  try {
    p.emplace(p_value);
  } catch (const ValidationError& e) {
    r.fail("p", Reader::strip(e));
  }

  const int forms = static_cast<int>(j.contains("atoms") || j.contains("ratio_seqs")) +
                    static_cast<int>(j.contains("weights")) + static_cast<int>(j.contains("weight_powers"));
  if (forms != 1) r.fail("(document)", "give exactly one of atoms+ratio_seqs, weights, weight_powers");

  if (j.contains("weights")) {
    const auto seq = r.sequence(j.at("weights"), "weights");
    try {
      return {id, SpecKind::weights, WeightSpec::from_weights(*p, seq), std::nullopt};
    } catch (const ValidationError& e) {
      r.fail("weights", Reader::strip(e));
    }
  }
  if (j.contains("weight_powers")) {
    return {id, SpecKind::weight_powers, WeightSpec(*p, r.sequence(j.at("weight_powers"), "weight_powers")), std::nullopt};
  }

  if (!j.contains("atoms")) r.fail("atoms", "missing");
  if (!j.contains("ratio_seqs")) r.fail("ratio_seqs", "missing");
  const auto& atoms = j.at("atoms");
  const auto& seqs = j.at("ratio_seqs");
  if (!atoms.is_array()) r.fail("atoms", "expected an array");
  if (!seqs.is_array()) r.fail("ratio_seqs", "expected an array");
  std::vector<Rational> measures;
  for (std::size_t i = 0; i < atoms.size(); ++i) measures.push_back(r.value(atoms[i], "atoms[" + std::to_string(i) + "]"));
  std::vector<PeriodicSequence> ratio_seqs;
  for (std::size_t i = 0; i < seqs.size(); ++i) ratio_seqs.push_back(r.sequence(seqs[i], "ratio_seqs[" + std::to_string(i) + "]"));
  try {
    auto model = build_model(*p, std::move(measures), std::move(ratio_seqs));
    auto w = weights_from_model(model);
    return {id, SpecKind::model, std::move(w), std::move(model)};
  } catch (const ValidationError& e) {
    r.fail(e.field().empty() ? "atoms" : e.field(), Reader::strip(e));
  }
}

SystemSpec load_spec(const std::filesystem::path& path, NumberMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string(), "(input)");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto spec = parse_spec(buf.str(), mode);
  if (spec.id.empty()) spec.id = path.stem().string();
  return spec;
}

ordered_json sequence_to_json(const PeriodicSequence& s) {
  auto strings = [](const std::vector<Rational>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
  };
  ordered_json out;
  out["k_min"] = s.k_min();
  out["core"] = strings(s.core());
  out["left_period"] = strings(s.left_period());
  out["right_period"] = strings(s.right_period());
  return out;
}

ordered_json weights_to_json(const WeightSpec& w, const std::string& id, bool prefer_weights) {
  ordered_json out;
  if (!id.empty()) out["id"] = id;
  out["p"] = to_string(w.p().value());
  if (prefer_weights) {
    // w = (w^p)^{1/p} is rational exactly when root_a(w^p)^b is; try it entry by entry.
    auto root = [&](const Rational& x) -> std::optional<Rational> {
      const auto a = w.p().value().get_num().get_ui(), b = w.p().value().get_den().get_ui();
      mpz_class n, d;
      if (!mpz_root(n.get_mpz_t(), x.get_num().get_mpz_t(), a) || !mpz_root(d.get_mpz_t(), x.get_den().get_mpz_t(), a)) {
        return std::nullopt;
      }
      mpz_pow_ui(n.get_mpz_t(), n.get_mpz_t(), b);
      mpz_pow_ui(d.get_mpz_t(), d.get_mpz_t(), b);
      return Rational(n, d);
    };
    auto roots = [&](const std::vector<Rational>& v) -> std::optional<std::vector<Rational>> {
      std::vector<Rational> out_v;
      for (const auto& x : v) {
        auto r = root(x);
        if (!r) return std::nullopt;
        out_v.push_back(*r);
      }
      return out_v;
    };
    const auto& s = w.powers();
    auto core = roots(s.core()), left = roots(s.left_period()), right = roots(s.right_period());
    if (core && left && right) {
      out["weights"] = sequence_to_json(PeriodicSequence(s.k_min(), *core, *left, *right));
      return out;
    }
  }
  out["weight_powers"] = sequence_to_json(w.powers());
  return out;
}

ordered_json model_to_json(const DissipativeModel& m, const std::string& id) {
  ordered_json out;
  if (!id.empty()) out["id"] = id;
  out["p"] = to_string(m.p().value());
  out["atoms"] = ordered_json::array();
  for (const auto& mu : m.atom_measures()) out["atoms"].push_back(to_string(mu));
  out["ratio_seqs"] = ordered_json::array();
  for (const auto& s : m.ratio_seqs()) out["ratio_seqs"].push_back(sequence_to_json(s));
  return out;
}

ordered_json vector_to_json(const ShiftVector<double>& x) {
  ordered_json out = ordered_json::array();
  for (const auto& [k, v] : x.entries()) out.push_back(ordered_json::array({k, v}));
  return out;
}

ordered_json vector_to_json(const ShiftVector<RadicalValue>& x) {
  ordered_json out = ordered_json::array();
  for (const auto& [k, v] : x.entries()) out.push_back(ordered_json::array({k, v.to_string()}));
  return out;
}

}  // namespace shiftlike
