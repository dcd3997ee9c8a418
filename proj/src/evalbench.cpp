#include "rankscreen/evalbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "rankscreen/bandit.hpp"
#include "rankscreen/baselines.hpp"

namespace rankscreen {

std::string Method::label() const {
  switch (kind) {
    case MethodKind::kCrSis:
      return "cr-sis";
    case MethodKind::kSis:
      return "sis";
    case MethodKind::kDcSis:
      return "dc-sis";
    case MethodKind::kBanditCrSis: {
      std::ostringstream os;
      os << "bandit-cr-sis(" << alpha0 << ")";
      return os.str();
    }
  }
  return "?";
}

std::optional<MethodKind> parse_method_kind(std::string_view name) {
  if (name == "cr-sis") return MethodKind::kCrSis;
  if (name == "bandit-cr-sis") return MethodKind::kBanditCrSis;
  if (name == "sis") return MethodKind::kSis;
  if (name == "dc-sis") return MethodKind::kDcSis;
  return std::nullopt;
}

ScreenResult run_method(const Method& method, const DataMatrix& data, const ResponseVector& y,
                        std::size_t d, SeedSpec seed) {
  switch (method.kind) {
    case MethodKind::kCrSis:
      return cr_sis(data, y, ScreenConfig{HardThreshold{d}, seed});
    case MethodKind::kBanditCrSis: {
      BanditConfig cfg;
      cfg.d = d;
      cfg.alpha0 = method.alpha0;
      cfg.seed = seed;
      return bandit_cr_sis(data, y, cfg);
    }
    case MethodKind::kSis:
      return sis(data, y, d);
    case MethodKind::kDcSis:
      return dc_sis(data, y, d);
  }
  throw std::invalid_argument("unknown screening method");
}

std::size_t minimum_model_size_in_ranking(std::span<const FeatureIndex> ranking,
                                          std::span<const FeatureIndex> active) {
  if (active.empty()) throw std::invalid_argument("active set must not be empty");
  std::unordered_map<FeatureIndex, std::size_t> position;
  position.reserve(ranking.size());
  for (std::size_t k = 0; k < ranking.size(); ++k) position.emplace(ranking[k], k + 1);
  std::size_t worst = 0;
  for (FeatureIndex j : active) {
    const auto it = position.find(j);
    if (it == position.end()) {
      throw std::invalid_argument("active feature " + std::to_string(j) + " was not ranked");
    }
    worst = std::max(worst, it->second);
  }
  return worst;
}

std::size_t minimum_model_size(const ScoreTable& scores, std::span<const FeatureIndex> active) {
  return minimum_model_size_in_ranking(rank_features(scores), active);
}

std::vector<double> quantiles(std::span<const double> values, std::span<const double> probs) {
  if (values.empty()) throw std::invalid_argument("quantiles of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(probs.size());
  for (double prob : probs) {
    if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
    const double h = static_cast<double>(sorted.size() - 1) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    out.push_back(sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]));
  }
  return out;
}

double selection_proportion(std::span<const std::size_t> min_sizes, std::size_t d) {
  if (d < 1) throw std::invalid_argument("selection_proportion needs d >= 1");
  if (min_sizes.empty()) return 0.0;
  const auto hits = std::count_if(min_sizes.begin(), min_sizes.end(),
                                  [d](std::size_t s) { return s <= d; });
  return static_cast<double>(hits) / static_cast<double>(min_sizes.size());
}

namespace {

TimingStats summarize_times(std::span<const double> seconds) {
  TimingStats t;
  const double k = static_cast<double>(seconds.size());
  for (double s : seconds) t.mean_seconds += s;
  t.mean_seconds /= k;
  if (seconds.size() > 1) {
    double ss = 0.0;
    for (double s : seconds) ss += (s - t.mean_seconds) * (s - t.mean_seconds);
    t.std_error = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
  }
  return t;
}

void fill_summary(MethodReport& m, const std::array<std::size_t, 3>& d_levels) {
  std::vector<double> sizes(m.min_sizes.begin(), m.min_sizes.end());
  const auto q = quantiles(sizes, kQuantileLevels);
  std::copy(q.begin(), q.end(), m.s_quantiles.begin());
  for (std::size_t k = 0; k < 3; ++k) m.proportions[k] = selection_proportion(m.min_sizes, d_levels[k]);
}

}  // namespace

BenchReport run_replicates(const SimModelSpec& spec, std::span<const Method> methods,
                           std::size_t replicates, SeedSpec base_seed, const BenchOptions& options) {
  if (replicates < 1) throw std::invalid_argument("run_replicates needs at least one replicate");
  if (methods.empty()) throw std::invalid_argument("run_replicates needs at least one method");

  BenchReport report;
  report.model = std::string(model_name(spec.model));
  report.n = spec.n;
  report.p = spec.p;
  report.replicates = replicates;
  report.base_seed = base_seed.global_seed;
  report.active_set = spec.active_set;
  const std::size_t d1 = default_model_size(spec.n);
  report.d_levels = {d1, 2 * d1, 3 * d1};

  report.methods.resize(methods.size());
  std::vector<std::vector<double>> times(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) report.methods[m].method = methods[m].label();

  const std::size_t bandit_d = options.bandit_d.value_or(spec.active_set.size());
  for (std::size_t r = 0; r < replicates; ++r) {
    SimModelSpec rep = spec;
    rep.seed = derive_seed(base_seed, StreamPurpose::kReplicate, r);
    const SimDataset data = simulate(rep);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const std::size_t d = methods[m].kind == MethodKind::kBanditCrSis ? bandit_d : std::min(d1, spec.p);
      const auto start = std::chrono::steady_clock::now();
      const ScreenResult result = run_method(methods[m], data.x, data.y, d, rep.seed);
      times[m].push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      report.methods[m].min_sizes.push_back(minimum_model_size_in_ranking(result.ranking, spec.active_set));
    }
  }
  for (std::size_t m = 0; m < methods.size(); ++m) {
    fill_summary(report.methods[m], report.d_levels);
    if (options.record_timing) report.methods[m].timing = summarize_times(times[m]);
  }
  return report;
}

void check_report(const BenchReport& report) {
  const auto fail = [](const std::string& what) { throw std::logic_error("BenchReport: " + what); };
  if (!(report.d_levels[0] <= report.d_levels[1] && report.d_levels[1] <= report.d_levels[2])) {
    fail("d levels not nondecreasing");
  }
  for (const auto& m : report.methods) {
    if (m.min_sizes.size() != report.replicates) fail(m.method + ": replicate count mismatch");
    for (std::size_t k = 1; k < m.s_quantiles.size(); ++k) {
      if (m.s_quantiles[k - 1] > m.s_quantiles[k]) fail(m.method + ": quantiles decrease");
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (!(m.proportions[k] >= 0.0 && m.proportions[k] <= 1.0)) fail(m.method + ": P outside [0, 1]");
      if (k > 0 && m.proportions[k - 1] > m.proportions[k]) fail(m.method + ": P not monotone in d");
    }
    for (std::size_t s : m.min_sizes) {
      if (s < report.active_set.size() || s > report.p) fail(m.method + ": minimum model size out of range");
    }
  }
}

void to_json(nlohmann::json& j, const BenchReport& report) {
  std::vector<std::size_t> active;
  for (FeatureIndex f : report.active_set) active.push_back(f + 1);
  j = nlohmann::json{{"model", report.model},
                     {"n", report.n},
                     {"p", report.p},
                     {"replicates", report.replicates},
                     {"base_seed", report.base_seed},
                     {"active_set", active},
                     {"quantile_levels", kQuantileLevels},
                     {"d_levels", report.d_levels}};
  auto& methods = j["methods"] = nlohmann::json::array();
  for (const auto& m : report.methods) {
    nlohmann::json mj{{"method", m.method},
                      {"s_quantiles", m.s_quantiles},
                      {"proportions", m.proportions},
                      {"min_sizes", m.min_sizes}};
    if (m.timing) {
      mj["timing"] = {{"mean_seconds", m.timing->mean_seconds}, {"std_error", m.timing->std_error}};
    }
    methods.push_back(std::move(mj));
  }
}

void from_json(const nlohmann::json& j, BenchReport& report) {
  j.at("model").get_to(report.model);
  j.at("n").get_to(report.n);
  j.at("p").get_to(report.p);
  j.at("replicates").get_to(report.replicates);
  j.at("base_seed").get_to(report.base_seed);
  report.active_set.clear();
  for (std::size_t f : j.at("active_set").get<std::vector<std::size_t>>()) {
    if (f < 1) throw std::invalid_argument("active_set entries are 1-based");
    report.active_set.push_back(f - 1);
  }
  j.at("d_levels").get_to(report.d_levels);
  report.methods.clear();
  for (const auto& mj : j.at("methods")) {
    MethodReport m;
    mj.at("method").get_to(m.method);
    mj.at("s_quantiles").get_to(m.s_quantiles);
    mj.at("proportions").get_to(m.proportions);
    mj.at("min_sizes").get_to(m.min_sizes);
    if (mj.contains("timing")) {
      m.timing = TimingStats{mj["timing"].at("mean_seconds").get<double>(),
                             mj["timing"].at("std_error").get<double>()};
    }
    report.methods.push_back(std::move(m));
  }
}

std::string render_table(const BenchReport& report) {
  std::ostringstream os;
  os << "Model " << report.model << " (n=" << report.n << ", p=" << report.p
     << ", R=" << report.replicates << ", d1=" << report.d_levels[0] << ", d2=" << report.d_levels[1]
     << ", d3=" << report.d_levels[2] << ")\n\n";
  os << "| method | 5% | 25% | 50% | 75% | 95% | P_d1 (%) | P_d2 (%) | P_d3 (%) |\n";
  os << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  os << std::fixed << std::setprecision(1);
  for (const auto& m : report.methods) {
    os << "| " << m.method;
    for (double q : m.s_quantiles) os << " | " << q;
    for (double prop : m.proportions) os << " | " << 100.0 * prop;
    os << " |\n";
  }
  return os.str();
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

}  // namespace

TimingTable timing_sweep(SweepAxis axis, std::span<const std::size_t> grid, std::size_t fixed,
                         std::size_t d, std::span<const Method> methods, std::size_t repeats,
                         SeedSpec seed) {
  if (grid.empty()) throw std::invalid_argument("timing_sweep needs a nonempty grid");
  if (methods.empty()) throw std::invalid_argument("timing_sweep needs at least one method");
  if (repeats < 1) throw std::invalid_argument("timing_sweep needs at least one repeat");

  TimingTable table;
  table.axis = axis;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const std::size_t n = axis == SweepAxis::kN ? grid[g] : fixed;
    const std::size_t p = axis == SweepAxis::kP ? grid[g] : fixed;
    const SimDataset data = simulate(make_model_spec(ModelId::k1a, n, p, derive_seed(seed, StreamPurpose::kReplicate, g)));
    std::vector<std::vector<double>> wall(methods.size());
    std::vector<std::vector<double>> cpu(methods.size());
    for (std::size_t r = 0; r < repeats; ++r) {
      for (std::size_t m = 0; m < methods.size(); ++m) {
        const SeedSpec run_seed = derive_seed(seed, StreamPurpose::kShuffle, r);
        const std::clock_t cpu_start = std::clock();
        const auto start = std::chrono::steady_clock::now();
        const ScreenResult result = run_method(methods[m], data.x, data.y, std::min(d, p), run_seed);
        wall[m].push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        cpu[m].push_back(static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC);
        if (result.selected.empty()) throw std::logic_error("screening selected nothing");
      }
    }
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const TimingStats stats = summarize_times(wall[m]);
      const TimingStats cpu_stats = summarize_times(cpu[m]);
      table.rows.push_back({methods[m].label(), grid[g], stats.mean_seconds, stats.std_error,
                            median_of(wall[m]), cpu_stats.mean_seconds});
    }
  }

  if (grid.size() >= 2) {
    for (const auto& method : methods) {
      const std::string label = method.label();
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, k = 0.0;
      for (const auto& row : table.rows) {
        if (row.method != label || !(row.mean_seconds > 0.0)) continue;
        const double lx = std::log(static_cast<double>(row.axis_value));
        const double ly = std::log(row.mean_seconds);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        k += 1.0;
      }
      const double denom = k * sxx - sx * sx;
      if (k >= 2.0 && denom > 0.0) table.slopes.emplace_back(label, (k * sxy - sx * sy) / denom);
    }
  }
  return table;
}

void write_timing_csv(const TimingTable& table, std::ostream& out) {
  out << "method," << (table.axis == SweepAxis::kN ? "n" : "p") << ",mean_seconds,std_error\n";
  out << std::setprecision(9);
  for (const auto& row : table.rows) {
    out << row.method << ',' << row.axis_value << ',' << row.mean_seconds << ',' << row.std_error << '\n';
  }
}

}  // namespace rankscreen
