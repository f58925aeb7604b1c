// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails. Optional argv[1]: path to the shiftlike CLI, for the byte-identity check.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <unistd.h>

#include "shiftlike/classifier.hpp"
#include "shiftlike/cli.hpp"
#include "shiftlike/corpus.hpp"
#include "shiftlike/errors.hpp"
#include "shiftlike/factor.hpp"
#include "shiftlike/oracles.hpp"
#include "shiftlike/radical.hpp"
#include "shiftlike/spec_io.hpp"
#include "support.hpp"

using namespace shiftlike;
namespace fs = std::filesystem;
using RV = RadicalValue;
using testsupport::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

template <class S>
S scalar(const Rational& r) {
  return Scalar<S>::from_rational(r);
}

Rational nonzero(Rng& rng) {
  std::int64_t num = 0;
  while (num == 0) num = rng.uniform(-6, 6);
  return Rational(num, rng.uniform(1, 4));
}

template <class S>
ShiftVector<S> random_vector(Rng& rng) {
  ShiftVector<S> x;
  const auto count = rng.uniform(1, 4);
  for (std::int64_t t = 0; t < count; ++t) x.set(rng.uniform(-5, 5), scalar<S>(nonzero(rng)));
  return x;
}

template <class S>
LpFunction<S> random_function(Rng& rng, std::size_t atoms) {
  LpFunction<S> phi;
  const auto count = rng.uniform(1, 6);
  for (std::int64_t t = 0; t < count; ++t) {
    phi.set({rng.uniform(-5, 5), static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(atoms) - 1))},
            scalar<S>(nonzero(rng)));
  }
  return phi;
}

// ---- corpus --------------------------------------------------------------------------------

struct Loaded {
  std::string id;
  WeightSpec w;
};

std::vector<Loaded> load_corpus() {
  fs::path dir = corpus_dir();
  if (corpus_files(dir).size() != 4 + kRandomCorpusSize) write_corpus(dir);
  std::vector<Loaded> out;
  for (const auto& path : corpus_files(dir)) {
    auto s = load_spec(path);
    out.push_back({s.id, s.weights});
  }
  return out;
}

const std::vector<Loaded>& corpus() {
  static const std::vector<Loaded> c = load_corpus();
  return c;
}

const Loaded& canonical(const std::string& id) {
  for (const auto& e : corpus()) {
    if (e.id == id) return e;
  }
  throw std::runtime_error("corpus lacks " + id);
}

// ---- criteria ------------------------------------------------------------------------------

Outcome exact_roundtrips() {
  Outcome o;
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    const auto w = testsupport::random_weights(rng);
    if (!(weights_from_nu(nu_from_weights(w), w.p()) == w)) o.fail("nu -> w roundtrip, spec " + std::to_string(i));
    if (!(weights_from_model(model_from_weights(w)) == w)) o.fail("model -> w roundtrip, spec " + std::to_string(i));
    const auto nu = nu_from_weights(w);
    if (!(nu_from_weights(weights_from_nu(nu, w.p())) == nu)) o.fail("w -> nu roundtrip, spec " + std::to_string(i));
    const auto model = testsupport::random_model(rng, static_cast<std::size_t>(rng.uniform(1, 3)), testsupport::random_exponent(rng));
    if (!(nu_from_model(model) == nu_from_weights(weights_from_model(model)))) {
      o.fail("model -> nu disagrees with model -> w -> nu, spec " + std::to_string(i));
    }
  }
  o.detail = o.pass ? "200 specs, zero tolerance" : o.detail;
  return o;
}

Outcome semiconjugacy() {
  Outcome o;
  Rng rng(202);
  double worst_float = 0;
  for (int i = 0; i < 100; ++i) {
    const auto model = testsupport::random_model(rng, static_cast<std::size_t>(rng.uniform(1, 3)), Exponent(rng.uniform(1, 3)));
    const auto phi = random_function<RV>(rng, model.atom_count());
    if (semiconjugacy_residual(model, phi) != 0.0) o.fail("exact residual nonzero, pair " + std::to_string(i));
    const auto fmodel = testsupport::random_model(rng, static_cast<std::size_t>(rng.uniform(1, 3)), testsupport::random_exponent(rng));
    const double r = semiconjugacy_residual(fmodel, random_function<double>(rng, fmodel.atom_count()));
    worst_float = std::max(worst_float, r);
    if (!(r <= 1e-10)) o.fail("float residual " + std::to_string(r) + ", pair " + std::to_string(i));
  }
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "100 exact pairs at 0, worst float residual %.3g", worst_float);
    o.detail = buf;
  }
  return o;
}

Outcome strong_selector() {
  Outcome o;
  Rng rng(303);
  for (int i = 0; i < 100; ++i) {
    const auto model = testsupport::random_model(rng, static_cast<std::size_t>(rng.uniform(1, 3)), Exponent(rng.uniform(1, 3)));
    const auto x = random_vector<RV>(rng);
    const auto wit = strong_selector_check(model, x, -10, 10);
    if (!wit.pass) o.fail("pair " + std::to_string(i) + " fails at n=" + std::to_string(*wit.failing_n));
  }
  if (o.pass) o.detail = "100 pairs, |n| <= 10, exact equality";
  return o;
}

Outcome distortion_bounds() {
  Outcome o;
  Rng rng(404);
  Rational worst_L(1);
  for (int i = 0; i < 100; ++i) {
    const auto model = testsupport::random_model(rng, 2, Exponent(rng.uniform(1, 3)));
    const auto phi = random_function<RV>(rng, 2);
    for (std::int64_t k = -6; k <= 6; ++k) {
      for (std::int64_t n = -6; n <= 6; ++n) {
        const auto cmp = distortion_norm_comparison(model, phi, k, n);
        worst_L = std::max(worst_L, cmp.L);
        if (!cmp.pass) o.fail("model " + std::to_string(i) + " at k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
    }
  }
  if (o.pass) o.detail = "100 two-atom models on |k|,|n| <= 6, largest L = " + to_string(worst_L);
  return o;
}

Outcome corpus_equivalence() {
  Outcome o;
  if (corpus().size() != 104) o.fail("corpus has " + std::to_string(corpus().size()) + " specs");
  for (const auto& e : corpus()) {
    const auto a = classify(e.w);
    const auto b = classify(model_from_weights(e.w));
    for (auto p : kAllProperties) {
      if (a[p].verdict != b[p].verdict) o.fail(e.id + ": " + std::string(to_string(p)) + " differs between ingestion paths");
    }
    for (const auto& v : hierarchy_violations(a)) o.fail(e.id + ": " + v);
  }
  if (o.pass) o.detail = "104 specs, nine verdicts each, hierarchy holds";
  return o;
}

Outcome golden_table() {
  Outcome o;
  using P = Property;
  const std::map<std::string, std::vector<P>> yes = {
      {"unit", {}},
      {"expanding", {P::expansive, P::uniformly_expansive, P::shadowing, P::generalized_hyperbolic}},
      {"chaotic",
       {P::li_yorke, P::hypercyclic, P::mixing, P::chaotic, P::frequently_hypercyclic, P::shadowing, P::generalized_hyperbolic}},
      {"mirrored", {P::expansive, P::uniformly_expansive}},
  };
  const std::map<std::string, std::string> condition = {{"expanding", "B"}, {"chaotic", "C"}};
  for (const auto& [id, props] : yes) {
    const auto rep = classify(canonical(id).w);
    for (auto p : kAllProperties) {
      const bool want = std::find(props.begin(), props.end(), p) != props.end();
      if ((rep[p].verdict == Verdict::yes) != want) {
        o.fail(id + ": " + std::string(to_string(p)) + " is " + std::string(to_string(rep[p].verdict)));
      }
    }
    if (condition.count(id) && rep[P::shadowing].certificate.get("condition") != condition.at(id)) {
      o.fail(id + ": shadowing condition " + rep[P::shadowing].certificate.get("condition"));
    }
  }
  if (o.pass) o.detail = "unit, expanding, chaotic, mirrored";
  return o;
}

Outcome shadowing_agreement() {
  Outcome o;
  int specs = 0;
  double worst_growth = 0, worst_ratio = 0;
  for (const auto& e : corpus()) {
    if (has_shadowing(e.w).verdict != Verdict::yes) continue;
    ++specs;
    std::map<std::int64_t, double> sup;
    for (std::int64_t N : {16, 32, 64}) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto r = shadowing_solve_splitting(e.w, PseudoOrbit::random(N, N, seed, e.w.p()));
        if (!r.converged) {
          o.fail(e.id + ": splitting solver did not converge (" + r.flag + ")");
          break;
        }
        sup[N] = std::max(sup[N], r.ratio);
      }
    }
    const double bound = 1.1 * sup[16];
    worst_ratio = std::max(worst_ratio, std::max({sup[16], sup[32], sup[64]}));
    worst_growth = std::max(worst_growth, sup[64] / sup[16]);
    if (sup[32] > bound || sup[64] > bound) {
      o.fail(e.id + ": ratio " + std::to_string(sup[64]) + " at N=64 vs " + std::to_string(sup[16]) + " at N=16");
    }
  }
  for (const char* id : {"unit", "mirrored"}) {
    const auto& w = canonical(id).w;
    std::vector<double> mins;
    for (std::int64_t N : {16, 32, 64}) mins.push_back(shadowing_window_optimize(w, PseudoOrbit::constant_unit(N, w.p())).lower_bound);
    if (!(mins[0] < mins[1] && mins[1] < mins[2])) o.fail(std::string(id) + ": optimizer minimum not increasing in N");
    if (mins[2] < 1.5 * mins[0]) o.fail(std::string(id) + ": optimizer minimum grew only x" + std::to_string(mins[2] / mins[0]));
  }
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d shadowing specs x 3 windows x 50 orbits, max ratio %.3f, max N=64/N=16 %.3f", specs,
                  worst_ratio, worst_growth);
    o.detail = buf;
  }
  return o;
}

Outcome probe_consistency() {
  Outcome o;
  int checks = 0;
  for (const auto& e : corpus()) {
    const auto rep = classify(e.w);
    const auto nu = nu_from_weights(e.w);
    const std::vector<std::pair<ProbeResult, Property>> probes = {
        {expansivity_probe(e.w, 40), Property::expansive},
        {uniform_expansivity_probe(e.w, Rational(2), 40), Property::uniformly_expansive},
        {hypercyclicity_sweep(nu, {Rational(1, 10), Rational(1, 100), Rational(1, 1000)}, {0, 1, 2, 4}).summary,
         Property::hypercyclic},
        {li_yorke_probe(e.w, nu, 64), Property::li_yorke},
    };
    for (const auto& [probe, prop] : probes) {
      ++checks;
      const bool yes = rep[prop].verdict == Verdict::yes;
      if (yes != (probe.evidence == Evidence::consistent_yes)) {
        o.fail(e.id + ": " + probe.probe + " " + std::string(to_string(probe.evidence)) + " vs classifier " +
               std::string(to_string(rep[prop].verdict)));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " probe runs, n_max = 40, N = 64";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string run_in_process(std::vector<std::string> args) {
  std::vector<char*> argv;
  std::string prog = "shiftlike";
  argv.push_back(prog.data());
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  const auto dir = fs::temp_directory_path() / ("shiftlike_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string spec = (fs::path(corpus_dir()) / "chaotic.json").string();
  const std::vector<std::vector<std::string>> runs = {
      {"classify", corpus_dir().string(), "--format", "csv"},
      {"shadow", spec, "--window", "64", "--trials", "50", "--seed", "7", "--format", "csv"},
      {"probe", corpus_dir().string(), "--format", "json", "--seed", "11"},
      {"factor-check", (fs::path(corpus_dir()) / "expanding.json").string(), "--trials", "5", "--seed", "3", "--format", "csv"},
  };
  for (const auto& args : runs) {
    const auto a = run_in_process(args), b = run_in_process(args);
    if (a != b) o.fail(args[0] + " output differs between in-process runs");
    if (a.rfind("0\n", 0) != 0) o.fail(args[0] + " exited with " + a.substr(0, a.find('\n')));
  }
  for (int i = 0; i < 2; ++i) write_corpus(dir / ("gen" + std::to_string(i)));
  for (const auto& f : corpus_files(dir / "gen0")) {
    if (slurp(f) != slurp(dir / "gen1" / f.filename())) o.fail("regenerated " + f.filename().string() + " differs");
  }
  int processes = 0;
  if (!cli.empty()) {
    for (const auto& args : runs) {
      std::string cmd = "\"" + cli + "\"";
      for (const auto& a : args) cmd += " \"" + a + "\"";
      for (int i = 0; i < 2; ++i) {
        const auto target = dir / ("out" + std::to_string(i) + ".txt");
        if (std::system((cmd + " > \"" + target.string() + "\"").c_str()) != 0) o.fail(args[0] + " via the CLI binary failed");
      }
      ++processes;
      if (slurp(dir / "out0.txt") != slurp(dir / "out1.txt")) o.fail(args[0] + " output differs between CLI processes");
      if (slurp(dir / "out0.txt").empty()) o.fail(args[0] + " produced no output");
    }
  }
  fs::remove_all(dir);
  if (o.pass) {
    o.detail = std::to_string(runs.size()) + " commands in-process" +
               (processes ? " and as " + std::to_string(processes) + " process pairs" : std::string()) +
               ", corpus regenerated byte-identically";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact algebra roundtrips", exact_roundtrips},
      {"semiconjugacy", semiconjugacy},
      {"strong bounded selector", strong_selector},
      {"distortion norm bounds", distortion_bounds},
      {"corpus ingestion equivalence and hierarchy", corpus_equivalence},
      {"golden verdict table", golden_table},
      {"shadowing oracle agreement", shadowing_agreement},
      {"probe consistency", probe_consistency},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index << ": " << name << " -- " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << (criteria.size() - static_cast<std::size_t>(failures)) << "/"
            << criteria.size() << std::endl;
  return failures ? 1 : 0;
}
