#include "shiftlike/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>

#include "shiftlike/errors.hpp"
#include "shiftlike/spec_io.hpp"

namespace shiftlike {

namespace {

// Plain modulo over raw engine output: std::uniform_int_distribution is not specified
// bit-for-bit across standard libraries.
struct Draw {
  std::mt19937_64 eng;
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng() % n); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
};

const std::vector<Rational>& pool(const char* which) {
  static const std::vector<Rational> core{Rational(1, 2), Rational(1), Rational(2)};
  static const std::vector<Rational> low{Rational(1, 8), Rational(1, 4), Rational(1, 2)};
  static const std::vector<Rational> high{Rational(2), Rational(4), Rational(8)};
  const std::string k = which;
  return k == "low" ? low : k == "high" ? high : core;
}

std::vector<Rational> tail(Draw& d) {
  const std::size_t len = 1 + d.below(3);
  switch (d.below(3)) {
    case 0: {
      std::vector<Rational> v;
      for (std::size_t i = 0; i < len; ++i) v.push_back(d.pick(pool("low")));
      return v;
    }
    case 1: {
      std::vector<Rational> v;
      for (std::size_t i = 0; i < len; ++i) v.push_back(d.pick(pool("high")));
      return v;
    }
    default: {
      // neutral: free values from {1/2, 1, 2}, closed off by the reciprocal of their product
      for (;;) {
        std::vector<Rational> v;
        Rational prod(1);
        for (std::size_t i = 0; i + 1 < len; ++i) {
          v.push_back(d.pick(pool("core")));
          prod *= v.back();
        }
        const Rational last = 1 / prod;
        const auto& c = pool("core");
        if (std::find(c.begin(), c.end(), last) != c.end()) {
          v.push_back(last);
          return v;
        }
      }
    }
  }
}

PeriodicSequence constant_seq(const Rational& v) { return PeriodicSequence(0, {}, {v}, {v}); }

}  // namespace

std::vector<CorpusEntry> canonical_specs() {
  const Exponent p(Rational(2));
  auto make = [&](std::string id, PeriodicSequence w) {
    return CorpusEntry{std::move(id), WeightSpec::from_weights(p, w), true};
  };
  return {
      make("unit", constant_seq(Rational(1))),
      make("expanding", constant_seq(Rational(2))),
      make("chaotic", PeriodicSequence(1, {}, {Rational(1, 2)}, {Rational(2)})),
      make("mirrored", PeriodicSequence(1, {}, {Rational(2)}, {Rational(1, 2)})),
  };
}

std::vector<CorpusEntry> random_specs(std::uint64_t seed, std::size_t count) {
  Draw d{std::mt19937_64(seed)};
  static const std::vector<Rational> exponents{Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Exponent p(d.pick(exponents));
    const auto k_min = static_cast<std::int64_t>(d.below(4)) - 2;
    std::vector<Rational> core(d.below(4));
    for (auto& c : core) c = d.pick(pool("core"));
    auto left = tail(d);
    auto right = tail(d);
    std::string id = "random_" + std::string(i < 10 ? "00" : i < 100 ? "0" : "") + std::to_string(i);
    out.push_back({std::move(id), WeightSpec(p, PeriodicSequence(k_min, std::move(core), std::move(left), std::move(right))), false});
  }
  return out;
}

std::filesystem::path corpus_dir() {
  if (const char* env = std::getenv("SHIFTLIKE_CORPUS_DIR"); env && *env) return env;
  return "corpus";
}

std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  auto entries = canonical_specs();
  auto random = random_specs(seed);
  entries.insert(entries.end(), random.begin(), random.end());
  std::vector<std::filesystem::path> paths;
  for (const auto& e : entries) {
    const auto path = dir / (e.id + ".json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path.string(), "--output");
    out << weights_to_json(e.weights, e.id, e.as_weights).dump(2) << "\n";
    paths.push_back(path);
  }
  return paths;
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace shiftlike
