#include "shiftlike/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "shiftlike/corpus.hpp"
#include "shiftlike/errors.hpp"
#include "shiftlike/factor.hpp"
#include "shiftlike/oracles.hpp"
#include "shiftlike/version.hpp"

namespace shiftlike {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void emit(const Table& t, Format format, const RunConfig& config, std::ostream& os) {
  switch (format) {
    case Format::csv: {
      for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
      os << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
      }
      return;
    }
    case Format::json: {
      nlohmann::ordered_json doc;
      doc["version"] = kVersion;
      doc["seed"] = config.seed;
      doc["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i) r[t.header[i]] = row[i];
        doc["rows"].push_back(std::move(r));
      }
      os << doc.dump(2) << "\n";
      return;
    }
    case Format::table: {
      std::vector<std::size_t> width(t.header.size());
      for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          s += cells[i];
          if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        os << s << "\n";
      };
      line(t.header);
      for (const auto& row : t.rows) line(row);
      return;
    }
  }
}

// Seeded draws with an explicit mapping so output does not depend on the standard library.
struct Draw {
  std::mt19937_64 eng;
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational nonzero() {
    std::int64_t num = 0;
    while (num == 0) num = between(-6, 6);
    return Rational(num, between(1, 4));
  }
};

template <class S>
ShiftVector<S> random_vector(Draw& d) {
  ShiftVector<S> x;
  const auto count = d.between(1, 4);
  for (std::int64_t t = 0; t < count; ++t) x.set(d.between(-5, 5), Scalar<S>::from_rational(d.nonzero()));
  return x;
}

template <class S>
LpFunction<S> random_function(Draw& d, std::size_t atoms) {
  LpFunction<S> phi;
  const auto count = d.between(1, 6);
  for (std::int64_t t = 0; t < count; ++t) {
    phi.set({d.between(-5, 5), static_cast<std::size_t>(d.between(0, static_cast<std::int64_t>(atoms) - 1))},
            Scalar<S>::from_rational(d.nonzero()));
  }
  return phi;
}

std::vector<std::filesystem::path> inputs(const RunConfig& config) {
  if (config.input.empty()) throw ValidationError("an input spec file or directory is required", "input");
  if (std::filesystem::is_directory(config.input)) {
    auto files = corpus_files(config.input);
    if (files.empty()) throw ValidationError("no .json specs in " + config.input.string(), "input");
    return files;
  }
  return {config.input};
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

PropertyReport checked_report(const SystemSpec& s, const Rational& c) {
  PropertyReport rep = s.model ? classify(*s.model, c) : classify(s.weights, c);
  const NuSpec nu = nu_from_weights(s.weights);
  for (const auto& r : rep.results) {
    if (auto why = verify_certificate(r, nu, s.weights, c)) {
      throw InvariantViolation("certificate for " + std::string(to_string(r.property)) + " rejected: " + *why);
    }
  }
  if (auto bad = hierarchy_violations(rep); !bad.empty()) throw InvariantViolation("hierarchy: " + bad.front());
  return rep;
}

void classify_rows(const SystemSpec& s, const RunConfig& config, Table& t) {
  const auto rep = checked_report(s, config.c);
  for (auto p : config.properties) {
    const auto& r = rep[p];
    t.rows.push_back({std::string(to_string(p)), std::string(to_string(r.verdict)), r.certificate.summary(), s.id,
                      std::to_string(config.seed), kVersion});
  }
}

void shadow_rows(const SystemSpec& s, const RunConfig& config, Table& t) {
  for (const auto N : config.windows) {
    for (std::int64_t trial = 0; trial < config.trials; ++trial) {
      const auto z = PseudoOrbit::random(N, N, config.seed + static_cast<std::uint64_t>(trial), s.weights.p());
      auto row = [&](const ShadowingResult& r) {
        t.rows.push_back({s.id, r.method, std::to_string(N), r.flag == "no-splitting" ? "nan" : fmt(r.ratio), r.flag,
                          std::to_string(config.seed), std::to_string(trial), kVersion});
      };
      std::optional<ShadowingResult> split;
      if (config.method != ShadowMethod::optimizer) {
        split = shadowing_solve_splitting(s.weights, z);
        row(*split);
      }
      if (config.method != ShadowMethod::splitting) {
        const auto opt = shadowing_window_optimize(s.weights, z);
        row(opt);
        if (split && split->converged && opt.lower_bound > split->sup_y * (1 + 1e-9)) {
          throw InvariantViolation("optimizer lower bound " + fmt(opt.lower_bound) + " exceeds splitting sup " +
                                   fmt(split->sup_y) + " at N=" + std::to_string(N) + " trial " + std::to_string(trial));
        }
      }
    }
  }
}

void probe_rows(const SystemSpec& s, const RunConfig& config, Table& t) {
  const auto rep = checked_report(s, config.c);
  const NuSpec nu = nu_from_weights(s.weights);
  const Rational mu_w = s.model ? s.model->total_measure() : Rational(1);
  const std::int64_t N = config.windows.back();
  const std::vector<std::pair<ProbeResult, Property>> probes = {
      {expansivity_probe(s.weights, config.n_max), Property::expansive},
      {uniform_expansivity_probe(s.weights, config.c, config.n_max), Property::uniformly_expansive},
      {hypercyclicity_sweep(nu, {Rational(1, 10), Rational(1, 100), Rational(1, 1000)}, {0, 1, 2, 4}, 64, mu_w).summary,
       Property::hypercyclic},
      {li_yorke_probe(s.weights, nu, N), Property::li_yorke},
  };
  for (const auto& [probe, prop] : probes) {
    const Verdict v = rep[prop].verdict;
    const bool agree = (probe.evidence == Evidence::consistent_yes) == (v == Verdict::yes);
    t.rows.push_back({probe.probe, std::string(to_string(probe.evidence)), std::string(to_string(v)), yes_no(agree),
                      fmt(probe.statistic), probe.detail, s.id, std::to_string(config.seed), kVersion});
  }
}

template <class S>
void factor_rows_for(const SystemSpec& s, const RunConfig& config, Table& t) {
  const DissipativeModel model = s.model ? *s.model : model_from_weights(s.weights);
  Draw d{std::mt19937_64(config.seed)};
  auto add = [&](const char* check, std::int64_t trial, bool pass, std::string detail) {
    t.rows.push_back({check, std::to_string(trial), pass ? "pass" : "fail", std::move(detail), s.id,
                      std::to_string(config.seed), kVersion});
    if (!pass) throw InvariantViolation(std::string(check) + " failed on trial " + std::to_string(trial));
  };
  auto show = [](const auto& v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
      return fmt(v);
    } else {
      return to_string(v);
    }
  };
  for (std::int64_t trial = 0; trial < config.trials; ++trial) {
    const auto x = random_vector<S>(d);
    const auto sel = strong_selector_check(model, x, -10, 10);
    add("strong-selector", trial, sel.pass,
        sel.failing_n ? "n=" + std::to_string(*sel.failing_n) + " lhs=" + show(sel.lhs) + " rhs=" + show(sel.rhs)
                      : "|n|<=10 equal");

    const auto phi = random_function<S>(d, model.atom_count());
    const double res = semiconjugacy_residual(model, phi);
    const bool exact = std::is_same_v<S, RadicalValue>;
    add("semiconjugacy", trial, exact ? res == 0.0 : res <= 1e-10, "residual=" + fmt(res));

    bool grid_ok = true;
    std::string where = "|k|,|n|<=6";
    Rational L(1);
    for (std::int64_t k = -6; k <= 6 && grid_ok; ++k) {
      for (std::int64_t n = -6; n <= 6 && grid_ok; ++n) {
        const auto cmp = distortion_norm_comparison(model, phi, k, n);
        L = cmp.L;
        if (!cmp.pass) {
          grid_ok = false;
          where = "k=" + std::to_string(k) + " n=" + std::to_string(n);
        }
      }
    }
    add("distortion-bound", trial, grid_ok, where + " L=" + to_string(L));
  }
}

void factor_rows(const SystemSpec& s, const RunConfig& config, Table& t) {
  if (config.mode == NumberMode::exact) {
    if (!s.weights.p().is_integer()) {
      throw ValidationError("exact factor checks need an integer p; rerun with --mode float", "--mode");
    }
    factor_rows_for<RadicalValue>(s, config, t);
  } else {
    factor_rows_for<double>(s, config, t);
  }
}

void write_repro(const RunConfig& config, const SystemSpec* spec, const std::filesystem::path& input,
                 const std::string& check, std::ostream& err) {
  nlohmann::ordered_json bundle;
  bundle["version"] = kVersion;
  bundle["seed"] = config.seed;
  bundle["input"] = input.string();
  bundle["failing_check"] = check;
  if (spec) {
    bundle["spec"] = spec->model ? model_to_json(*spec->model, spec->id) : weights_to_json(spec->weights, spec->id, false);
  }
  const std::string id = spec ? spec->id : input.stem().string();
  std::filesystem::create_directories(config.repro_dir);
  const auto path = config.repro_dir / ("repro_" + id + "_" + std::to_string(config.seed) + ".json");
  std::ofstream(path, std::ios::binary | std::ios::trunc) << bundle.dump(2) << "\n";
  err << "reproduction bundle: " << path.string() << "\n";
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.windows.empty()) throw ValidationError("at least one window is required", "--window");
  for (const auto N : config.windows) {
    if (N < 8) throw ValidationError("window must be >= 8, got " + std::to_string(N), "--window");
  }
  if (config.trials < 1) throw ValidationError("trials must be >= 1", "--trials");
  if (config.n_max < 1) throw ValidationError("n-max must be >= 1", "--n-max");
  if (config.c <= 1) throw ValidationError("c must be > 1", "--c");
  if (config.properties.empty()) throw ValidationError("empty property list", "--properties");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<SystemSpec> current;
  std::filesystem::path current_path;
  try {
    validate(config);
    Table t;
    if (config.command == Command::gen_examples) {
      const auto dir = config.output.empty() ? corpus_dir() : config.output;
      t.header = {"spec_id", "file", "seed", "version"};
      for (const auto& path : write_corpus(dir, config.seed)) {
        t.rows.push_back({path.stem().string(), path.string(), std::to_string(config.seed), kVersion});
      }
      emit(t, config.format, config, out);
      return 0;
    }
    switch (config.command) {
      case Command::classify: t.header = {"property", "verdict", "certificate", "spec_id", "seed", "version"}; break;
      case Command::shadow: t.header = {"spec_id", "method", "N", "ratio", "flag", "seed", "trial", "version"}; break;
      case Command::probe:
        t.header = {"probe", "evidence", "classifier", "agree", "statistic", "detail", "spec_id", "seed", "version"};
        break;
      case Command::factor_check: t.header = {"check", "trial", "result", "detail", "spec_id", "seed", "version"}; break;
      case Command::gen_examples: break;
    }
    for (const auto& path : inputs(config)) {
      current_path = path;
      current.reset();
      current = load_spec(path, config.mode);
      switch (config.command) {
        case Command::classify: classify_rows(*current, config, t); break;
        case Command::shadow: shadow_rows(*current, config, t); break;
        case Command::probe: probe_rows(*current, config, t); break;
        case Command::factor_check: factor_rows(*current, config, t); break;
        case Command::gen_examples: break;
      }
    }
    if (config.output.empty()) {
      emit(t, config.format, config, out);
    } else {
      std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
      if (!file) throw ValidationError("cannot write " + config.output.string(), "--output");
      emit(t, config.format, config, file);
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InexactError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    write_repro(config, current ? &*current : nullptr, current_path, e.what(), err);
    return 2;
  }
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dissipative systems and their conjugate weighted backward shifts"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "table", mode = "exact", c = "2", method = "splitting";
  std::vector<std::string> properties;
  std::string input;

  std::vector<std::string> names;
  for (auto p : kAllProperties) names.emplace_back(to_string(p));

  struct Sub {
    const char* name;
    Command command;
    const char* help;
  };
  const std::vector<Sub> subs = {
      {"classify", Command::classify, "Decide the nine properties with certificates"},
      {"shadow", Command::shadow, "Solve seeded pseudo-orbits and report shadowing ratios"},
      {"probe", Command::probe, "Finite-window evidence against the classifier"},
      {"factor-check", Command::factor_check, "Check the factor identities on seeded random inputs"},
      {"gen-examples", Command::gen_examples, "Write the canonical and seeded random spec corpus"},
  };
  std::map<CLI::App*, Command> commands;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    commands[sub] = s.command;
    if (s.command != Command::gen_examples) {
      sub->add_option("input", input, "Spec file or directory of specs")->required();
    }
    sub->add_option("--format", format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--seed", config.seed, "Seed for every random choice");
    sub->add_option("--output", config.output, s.command == Command::gen_examples ? "Corpus directory" : "Report file");
    if (s.command == Command::gen_examples) continue;
    sub->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--c", c, "Uniform expansivity constant, a rational > 1");
    sub->add_option("--repro-dir", config.repro_dir, "Directory for reproduction bundles");
    if (s.command == Command::classify) {
      sub->add_option("--properties", properties, "Subset of " + CLI::detail::join(names, ","))->delimiter(',');
    }
    if (s.command == Command::shadow || s.command == Command::probe) {
      sub->add_option("--window", config.windows, "Window sizes N (>= 8), comma separated")->delimiter(',');
    }
    if (s.command == Command::shadow || s.command == Command::factor_check) {
      sub->add_option("--trials", config.trials, "Seeded trials per window");
    }
    if (s.command == Command::shadow) {
      sub->add_option("--method", method, "splitting, optimizer or both")
          ->check(CLI::IsMember({"splitting", "optimizer", "both"}));
    }
    if (s.command == Command::probe) sub->add_option("--n-max", config.n_max, "Largest iterate for the expansivity probes");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) config.command = command;
  }
  config.input = input;
  config.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::table;
  config.mode = mode == "float" ? NumberMode::floating : NumberMode::exact;
  config.method = method == "both" ? ShadowMethod::both : method == "optimizer" ? ShadowMethod::optimizer : ShadowMethod::splitting;
  try {
    config.c = parse_rational(c);
    if (!properties.empty()) {
      config.properties.clear();
      for (const auto& name : properties) {
        const auto p = parse_property(name);
        if (!p) throw ValidationError("unknown property '" + name + "'", "--properties");
        config.properties.push_back(*p);
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << (e.field().empty() ? std::string("--c: ") : std::string()) << e.what() << "\n";
    return 1;
  }
  return run(config, out, err);
}

}  // namespace shiftlike
