#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shiftlike/classifier.hpp"
#include "shiftlike/spec_io.hpp"

namespace shiftlike {

enum class Command { classify, shadow, probe, factor_check, gen_examples };
enum class Format { table, csv, json };
enum class ShadowMethod { splitting, optimizer, both };

struct RunConfig {
  Command command = Command::classify;
  /// A spec file, or a directory of specs processed in name order.
  std::filesystem::path input;
  Format format = Format::table;
  std::vector<std::int64_t> windows{16, 32, 64};
  std::int64_t trials = 10;
  std::uint64_t seed = 1729;
  std::vector<Property> properties{kAllProperties.begin(), kAllProperties.end()};
  Rational c{2};
  NumberMode mode = NumberMode::exact;
  ShadowMethod method = ShadowMethod::splitting;
  std::int64_t n_max = 40;
  /// Report file (stdout when empty); corpus directory for gen-examples.
  std::filesystem::path output;
  /// Where invariant violations leave their reproduction bundle.
  std::filesystem::path repro_dir = ".";
};

/// Throws ValidationError on values outside the documented ranges.
void validate(const RunConfig& config);

/// Exit codes: 0 success, 1 validation error, 2 invariant violation (bundle written to
/// repro_dir). Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace shiftlike
