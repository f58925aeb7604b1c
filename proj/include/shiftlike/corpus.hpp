#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shiftlike/core_model.hpp"

namespace shiftlike {

inline constexpr std::uint64_t kDefaultCorpusSeed = 1729;
inline constexpr std::size_t kRandomCorpusSize = 100;

struct CorpusEntry {
  std::string id;
  WeightSpec weights;
  bool as_weights;  // serialize w itself rather than w^p
};

/// unit (w = 1), expanding (w = 2), chaotic (1/2 left of 1, 2 from 1 on) and mirrored
/// (2 left, 1/2 right), all with p = 2.
std::vector<CorpusEntry> canonical_specs();

/// Seeded random eventually periodic specs random_000... Each tail is independently
/// contracting, neutral (period product exactly 1) or expanding. Output depends only on
/// the seed.
std::vector<CorpusEntry> random_specs(std::uint64_t seed, std::size_t count = kRandomCorpusSize);

/// $SHIFTLIKE_CORPUS_DIR if set, else ./corpus.
std::filesystem::path corpus_dir();

/// Writes the canonical and random specs as <id>.json; returns the paths in write order.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir, std::uint64_t seed = kDefaultCorpusSeed);

/// The *.json files of a corpus directory in lexicographic order.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

}  // namespace shiftlike
