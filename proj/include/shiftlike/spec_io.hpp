#pragma once

// JSON system specs.
//
//   {
//     "id": "chaotic",                      optional
//     "p": "2",                             string rational >= 1
//     one of:
//       "atoms": ["1/2", "1/2"],            atom measures, with
//       "ratio_seqs": [SEQ, SEQ],           one ratio sequence per atom
//       "weights": SEQ,                     the weights w_k
//       "weight_powers": SEQ                the values w_k^p
//   }
//   SEQ = {"k_min": int, "core": [VAL...], "left_period": [VAL...], "right_period": [VAL...]}
//   VAL = "num/den" string or integer; float literals only in float mode.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "shiftlike/core_model.hpp"
#include "shiftlike/operators.hpp"

namespace shiftlike {

enum class NumberMode { exact, floating };

enum class SpecKind { model, weights, weight_powers };

struct SystemSpec {
  std::string id;
  SpecKind kind;
  WeightSpec weights;                     // derived from the model when one is given
  std::optional<DissipativeModel> model;  // set for SpecKind::model
};

/// Parses a spec. Errors are ValidationError naming the offending field and the line it
/// appears on ("atoms[1]: line 4: ...").
SystemSpec parse_spec(std::string_view text, NumberMode mode = NumberMode::exact);
SystemSpec load_spec(const std::filesystem::path& path, NumberMode mode = NumberMode::exact);

nlohmann::ordered_json sequence_to_json(const PeriodicSequence& s);
/// Spec as weight powers, or as weights when every w_k is rational and `prefer_weights`.
nlohmann::ordered_json weights_to_json(const WeightSpec& w, const std::string& id, bool prefer_weights);
nlohmann::ordered_json model_to_json(const DissipativeModel& m, const std::string& id);

/// [[index, value], ...] in index order.
nlohmann::ordered_json vector_to_json(const ShiftVector<double>& x);
nlohmann::ordered_json vector_to_json(const ShiftVector<RadicalValue>& x);

}  // namespace shiftlike
