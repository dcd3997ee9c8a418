#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rankscreen/bandit.hpp"
#include "rankscreen/baselines.hpp"
#include "rankscreen/core.hpp"
#include "rankscreen/csv.hpp"
#include "rankscreen/evalbench.hpp"
#include "rankscreen/screen.hpp"
#include "rankscreen/simgen.hpp"

namespace rankscreen::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScreenOptions {
  std::string input;
  std::string response = "y";
  std::string method = "cr-sis";
  std::optional<std::size_t> d;
  std::vector<double> soft;
  std::optional<double> alpha0;
  std::optional<double> eta;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

struct SimulateOptions {
  std::string model;
  std::size_t n = 1500;
  std::size_t p = 2000;
  double rho = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

struct BenchCliOptions {
  std::string model;
  std::size_t n = 1500;
  std::size_t p = 2000;
  std::size_t replicates = 50;
  std::vector<std::string> methods{"cr-sis"};
  std::vector<double> alpha0{0.15, 0.25, 0.35};
  std::optional<std::size_t> bandit_d;
  bool timing = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string table;
};

struct TimeOptions {
  std::string axis = "n";
  std::vector<std::size_t> grid;
  std::size_t fixed = 0;
  std::size_t d = 20;
  std::vector<std::string> methods{"cr-sis", "bandit-cr-sis"};
  std::vector<double> alpha0{0.35};
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
  std::string out;
};

// Writes to `path`, or to `fallback` when the path is empty or "-".
template <typename WriteFn>
void emit(const std::string& path, std::ostream& fallback, WriteFn&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw OutputError("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw OutputError("failed writing '" + path + "'");
}

std::vector<Method> expand_methods(const std::vector<std::string>& names, const std::vector<double>& alphas) {
  std::vector<Method> methods;
  for (const auto& name : names) {
    const auto kind = parse_method_kind(name);
    if (!kind) throw UsageError("unknown method '" + name + "'");
    if (*kind == MethodKind::kBanditCrSis) {
      if (alphas.empty()) throw UsageError("bandit-cr-sis needs at least one --alpha0 value");
      for (double a : alphas) {
        if (!(a >= 0.0)) throw UsageError("--alpha0 values must be nonnegative");
        methods.push_back({*kind, a});
      }
    } else {
      methods.push_back({*kind, 0.0});
    }
  }
  if (methods.empty()) throw UsageError("no methods given");
  return methods;
}

ModelId parse_model_or_throw(const std::string& text) {
  const auto id = parse_model_id(text);
  if (!id) throw UsageError("unknown model '" + text + "' (expected 1a-1d or 2a-2e)");
  return *id;
}

SimModelSpec spec_or_usage(ModelId id, std::size_t n, std::size_t p, std::uint64_t seed, double rho) {
  try {
    return make_model_spec(id, n, p, SeedSpec{seed}, rho);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

nlohmann::json screen_json(const ScreenResult& result, const DataMatrix& data, const ScreenOptions& opt,
                           const nlohmann::json& selection) {
  const auto& names = data.names();
  std::vector<std::optional<double>> score_of(data.cols());
  for (const auto& s : result.scores) score_of[s.feature] = s.score;

  nlohmann::json j{{"method", opt.method},
                   {"n", data.rows()},
                   {"p", data.cols()},
                   {"response", opt.response},
                   {"seed", opt.seed},
                   {"selection", selection}};
  auto& selected = j["selected"] = nlohmann::json::array();
  for (FeatureIndex f : result.selected) selected.push_back(names[f]);
  auto& ranking = j["ranking"] = nlohmann::json::array();
  for (std::size_t k = 0; k < result.ranking.size(); ++k) {
    const FeatureIndex f = result.ranking[k];
    nlohmann::json entry{{"rank", k + 1}, {"feature", names[f]}, {"index", f + 1}};
    if (score_of[f]) entry["score"] = *score_of[f];
    ranking.push_back(std::move(entry));
  }
  auto& trace = j["trace"] = nlohmann::json::array();
  for (const auto& r : result.trace) {
    nlohmann::json surviving = nlohmann::json::array();
    for (FeatureIndex f : r.surviving) surviving.push_back(names[f]);
    trace.push_back({{"round", r.round},
                     {"alpha", r.alpha},
                     {"subsample_size", r.subsample_size},
                     {"survivors", r.survivors},
                     {"surviving", std::move(surviving)}});
  }
  return j;
}

void write_screen_tsv(std::ostream& os, const ScreenResult& result, const DataMatrix& data) {
  std::vector<std::optional<double>> score_of(data.cols());
  for (const auto& s : result.scores) score_of[s.feature] = s.score;
  std::vector<bool> chosen(data.cols(), false);
  for (FeatureIndex f : result.selected) chosen[f] = true;
  os << "rank\tfeature\tscore\tselected\n" << std::setprecision(17);
  for (std::size_t k = 0; k < result.ranking.size(); ++k) {
    const FeatureIndex f = result.ranking[k];
    os << k + 1 << '\t' << data.names()[f] << '\t';
    if (score_of[f]) os << *score_of[f];
    os << '\t' << (chosen[f] ? 1 : 0) << '\n';
  }
}

int cmd_screen(const ScreenOptions& opt, std::ostream& out) {
  const auto kind = parse_method_kind(opt.method);
  if (!kind) throw UsageError("unknown method '" + opt.method + "'");
  if (!opt.soft.empty() && *kind != MethodKind::kCrSis) throw UsageError("--soft is only valid with cr-sis");
  if ((opt.alpha0 || opt.eta) && *kind != MethodKind::kBanditCrSis) {
    throw UsageError("--alpha0 and --eta are only valid with bandit-cr-sis");
  }
  if (opt.format != "json" && opt.format != "tsv") throw UsageError("--format must be json or tsv");
  if (opt.d && *opt.d < 1) throw UsageError("--d must be >= 1");

  CsvDataset ds = to_dataset(read_csv_file(opt.input), opt.response);
  const DataMatrix& data = ds.predictors;
  const std::size_t n = data.rows();
  const std::size_t d = opt.d.value_or(n >= 3 ? std::min(default_model_size(n), data.cols()) : 1);
  const SeedSpec seed{opt.seed};

  ScreenResult result;
  nlohmann::json selection;
  if (!opt.soft.empty()) {
    ScreenConfig cfg{SoftThreshold{opt.soft[0], opt.soft[1]}, seed};
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    result = cr_sis(data, ds.response, cfg);
    selection = {{"rule", "soft"},
                 {"c", opt.soft[0]},
                 {"kappa", opt.soft[1]},
                 {"threshold", opt.soft[0] * std::pow(static_cast<double>(n), -opt.soft[1])}};
  } else if (*kind == MethodKind::kBanditCrSis) {
    BanditConfig cfg;
    cfg.d = d;
    cfg.alpha0 = opt.alpha0.value_or(0.35);
    cfg.eta = opt.eta.value_or(1.1);
    cfg.seed = seed;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    result = bandit_cr_sis(data, ds.response, cfg);
    selection = {{"rule", "hard"}, {"d", d}, {"alpha0", cfg.alpha0}, {"eta", cfg.eta}};
  } else {
    result = run_method(Method{*kind, 0.0}, data, ds.response, d, seed);
    selection = {{"rule", "hard"}, {"d", d}};
  }

  emit(opt.out, out, [&](std::ostream& os) {
    if (opt.format == "tsv") {
      write_screen_tsv(os, result, data);
    } else {
      os << screen_json(result, data, opt, selection).dump(2) << '\n';
    }
  });
  return kExitOk;
}

std::string active_names(const std::vector<FeatureIndex>& active) {
  std::string s;
  for (FeatureIndex f : active) {
    if (!s.empty()) s += ',';
    s += "x" + std::to_string(f + 1);
  }
  return s;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const SimModelSpec spec = spec_or_usage(parse_model_or_throw(opt.model), opt.n, opt.p, opt.seed, opt.rho);
  const SimDataset data = simulate(spec);
  emit(opt.out, out, [&](std::ostream& os) { write_csv(os, data.x, data.y, "y"); });
  // keep a CSV written to standard output clean
  (opt.out == "-" ? err : out) << "active: " << active_names(spec.active_set) << '\n';
  return kExitOk;
}

int cmd_bench(const BenchCliOptions& opt, std::ostream& out) {
  const SimModelSpec spec = spec_or_usage(parse_model_or_throw(opt.model), opt.n, opt.p, opt.seed, 0.5);
  const auto methods = expand_methods(opt.methods, opt.alpha0);
  if (opt.replicates < 1) throw UsageError("--replicates must be >= 1");
  if (opt.n < 3) throw UsageError("--n must be >= 3");
  BenchOptions bench_opts{opt.bandit_d, opt.timing};
  const BenchReport report = run_replicates(spec, methods, opt.replicates, SeedSpec{opt.seed}, bench_opts);
  check_report(report);
  const std::string table = render_table(report);
  // JSON goes to --out (standard output by default); the table goes to
  // --table, or to standard output when the JSON went to a file.
  emit(opt.out, out, [&](std::ostream& os) { os << nlohmann::json(report).dump(2) << '\n'; });
  if (!opt.table.empty()) {
    emit(opt.table, out, [&](std::ostream& os) { os << table; });
  } else if (!opt.out.empty() && opt.out != "-") {
    out << table;
  }
  return kExitOk;
}

int cmd_time(const TimeOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.axis != "n" && opt.axis != "p") throw UsageError("--axis must be n or p");
  if (opt.grid.empty()) throw UsageError("--grid must list at least one value");
  if (opt.repeats < 1) throw UsageError("--repeats must be >= 1");
  const SweepAxis axis = opt.axis == "n" ? SweepAxis::kN : SweepAxis::kP;
  for (std::size_t g : opt.grid) {
    if (axis == SweepAxis::kN && g < 3) throw UsageError("--grid sample sizes must be >= 3");
    if (axis == SweepAxis::kP && g < 5) throw UsageError("--grid feature counts must be >= 5");
  }
  if (axis == SweepAxis::kN && opt.fixed < 5) throw UsageError("--fixed feature count must be >= 5");
  if (axis == SweepAxis::kP && opt.fixed < 3) throw UsageError("--fixed sample size must be >= 3");
  const auto methods = expand_methods(opt.methods, opt.alpha0);
  const TimingTable table = timing_sweep(axis, opt.grid, opt.fixed, opt.d, methods, opt.repeats, SeedSpec{opt.seed});
  emit(opt.out, out, [&](std::ostream& os) { write_timing_csv(table, os); });
  for (const auto& [method, slope] : table.slopes) {
    err << "log-log slope " << method << ": " << slope << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feature screening by Chatterjee's rank correlation"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = runtime default)")->check(CLI::NonNegativeNumber);

  const auto add_seed = [](CLI::App* sub, std::uint64_t& seed) {
    sub->add_option("--seed", seed, "Random seed")->envname("RANKSCREEN_SEED");
  };

  ScreenOptions screen;
  auto* screen_cmd = app.add_subcommand("screen", "Screen the predictors of a CSV dataset");
  screen_cmd->add_option("input", screen.input, "CSV file with a header row")->required();
  screen_cmd->add_option("--response", screen.response, "Name of the response column")->capture_default_str();
  screen_cmd->add_option("--method", screen.method, "cr-sis | bandit-cr-sis | sis | dc-sis")->capture_default_str();
  auto* d_opt = screen_cmd->add_option("--d", screen.d, "Model size for top-d selection (default floor(n/ln n))");
  auto* soft_opt = screen_cmd->add_option("--soft", screen.soft, "Soft threshold C KAPPA (cr-sis only)")->expected(2);
  d_opt->excludes(soft_opt);
  screen_cmd->add_option("--alpha0", screen.alpha0, "Initial schedule parameter (bandit-cr-sis only)");
  screen_cmd->add_option("--eta", screen.eta, "Schedule divisor (bandit-cr-sis only)");
  add_seed(screen_cmd, screen.seed);
  screen_cmd->add_option("--out", screen.out, "Output path (default standard output)");
  screen_cmd->add_option("--format", screen.format, "json | tsv")->capture_default_str();

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Write a synthetic benchmark dataset as CSV");
  sim_cmd->add_option("--model", sim.model, "1a, 1b, 1c, 1d, 2a, 2b, 2c, 2d or 2e")->required();
  sim_cmd->add_option("--n", sim.n, "Sample count")->capture_default_str();
  sim_cmd->add_option("--p", sim.p, "Feature count")->capture_default_str();
  sim_cmd->add_option("--rho", sim.rho, "AR(1) correlation of adjacent predictors")->capture_default_str();
  add_seed(sim_cmd, sim.seed);
  sim_cmd->add_option("--out", sim.out, "Output CSV path")->required();

  BenchCliOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Replicate a synthetic benchmark and report S and P");
  bench_cmd->add_option("--model", bench.model, "Benchmark model id")->required();
  bench_cmd->add_option("--n", bench.n)->capture_default_str();
  bench_cmd->add_option("--p", bench.p)->capture_default_str();
  bench_cmd->add_option("--replicates", bench.replicates)->capture_default_str();
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated method names")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--alpha0", bench.alpha0, "Comma-separated bandit alpha0 values")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--bandit-d", bench.bandit_d, "Bandit target size (default: active set size)");
  bench_cmd->add_flag("--timing", bench.timing, "Record per-method wall time");
  add_seed(bench_cmd, bench.seed);
  bench_cmd->add_option("--out", bench.out, "JSON report path (default standard output)");
  bench_cmd->add_option("--table", bench.table, "Markdown table path (default standard output)");

  TimeOptions timing;
  auto* time_cmd = app.add_subcommand("time", "Time the screeners along a grid of n or p");
  time_cmd->add_option("--axis", timing.axis, "n or p")->capture_default_str();
  time_cmd->add_option("--grid", timing.grid, "Comma-separated grid values")->delimiter(',')->required();
  time_cmd->add_option("--fixed", timing.fixed, "Value of the other dimension")->required();
  time_cmd->add_option("--d", timing.d)->capture_default_str();
  time_cmd->add_option("--methods", timing.methods)->delimiter(',')->capture_default_str();
  time_cmd->add_option("--alpha0", timing.alpha0)->delimiter(',')->capture_default_str();
  time_cmd->add_option("--repeats", timing.repeats)->capture_default_str();
  add_seed(time_cmd, timing.seed);
  time_cmd->add_option("--out", timing.out, "CSV output path (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  set_worker_threads(threads);
  try {
    if (screen_cmd->parsed()) return cmd_screen(screen, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
    if (time_cmd->parsed()) return cmd_time(timing, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CsvError& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == CsvError::Kind::kIo ? kExitIo : kExitParse;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace rankscreen::cli
