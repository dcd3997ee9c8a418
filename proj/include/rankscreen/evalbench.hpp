#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankscreen/core.hpp"
#include "rankscreen/screen.hpp"
#include "rankscreen/simgen.hpp"

namespace rankscreen {

enum class MethodKind { kCrSis, kBanditCrSis, kSis, kDcSis };

struct Method {
  MethodKind kind = MethodKind::kCrSis;
  double alpha0 = 0.0;  // bandit only

  /// "cr-sis", "sis", "dc-sis" or "bandit-cr-sis(0.35)".
  std::string label() const;

  friend bool operator==(const Method&, const Method&) = default;
};

/// Accepts "cr-sis", "bandit-cr-sis", "sis" and "dc-sis".
std::optional<MethodKind> parse_method_kind(std::string_view name);

/// Runs one screener with model size d. `seed` drives the tie-breaks and, for
/// the bandit, the row shuffle.
ScreenResult run_method(const Method& method, const DataMatrix& data, const ResponseVector& y,
                        std::size_t d, SeedSpec seed);

/// Rank (1-based) of the worst-ranked active feature.
std::size_t minimum_model_size(const ScoreTable& scores, std::span<const FeatureIndex> active);
std::size_t minimum_model_size_in_ranking(std::span<const FeatureIndex> ranking,
                                          std::span<const FeatureIndex> active);

/// Linear interpolation between order statistics (h = (n-1)p).
std::vector<double> quantiles(std::span<const double> values, std::span<const double> probs);

/// Fraction of replicates whose minimum model size is <= d.
double selection_proportion(std::span<const std::size_t> min_sizes, std::size_t d);

inline constexpr std::array<double, 5> kQuantileLevels{0.05, 0.25, 0.50, 0.75, 0.95};

struct TimingStats {
  double mean_seconds = 0.0;
  double std_error = 0.0;

  friend bool operator==(const TimingStats&, const TimingStats&) = default;
};

struct MethodReport {
  std::string method;
  std::array<double, 5> s_quantiles{};
  std::array<double, 3> proportions{};
  std::vector<std::size_t> min_sizes;
  std::optional<TimingStats> timing;

  friend bool operator==(const MethodReport&, const MethodReport&) = default;
};

struct BenchReport {
  std::string model;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t replicates = 0;
  std::uint64_t base_seed = 0;
  std::vector<FeatureIndex> active_set;
  std::array<std::size_t, 3> d_levels{};
  std::vector<MethodReport> methods;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

struct BenchOptions {
  /// Model size handed to the bandit; the size of the active set when empty.
  std::optional<std::size_t> bandit_d;
  bool record_timing = false;
};

/// Replicate r draws its data from seed derive_seed(base_seed, replicate, r);
/// every method sees the same data within a replicate. P is reported at
/// d1 = floor(n / ln n), 2 d1 and 3 d1.
BenchReport run_replicates(const SimModelSpec& spec, std::span<const Method> methods,
                           std::size_t replicates, SeedSpec base_seed, const BenchOptions& options = {});

/// Throws std::logic_error naming the first violated report invariant.
void check_report(const BenchReport& report);

void to_json(nlohmann::json& j, const BenchReport& report);
void from_json(const nlohmann::json& j, BenchReport& report);

/// Markdown table: method, five S quantiles, then P at d1, d2, d3 in percent.
std::string render_table(const BenchReport& report);

enum class SweepAxis { kN, kP };

struct TimingRow {
  std::string method;
  std::size_t axis_value = 0;
  double mean_seconds = 0.0;
  double std_error = 0.0;
  double median_seconds = 0.0;
  double mean_cpu_seconds = 0.0;
};

struct TimingTable {
  SweepAxis axis = SweepAxis::kN;
  std::vector<TimingRow> rows;
  /// Least-squares slope of log(mean time) on log(axis value), per method.
  /// Present only for grids with at least two points.
  std::vector<std::pair<std::string, double>> slopes;
};

/// Times each method on Model 1a data at every grid point. The other
/// dimension is held at `fixed`. Methods run one at a time.
TimingTable timing_sweep(SweepAxis axis, std::span<const std::size_t> grid, std::size_t fixed,
                         std::size_t d, std::span<const Method> methods, std::size_t repeats,
                         SeedSpec seed);

/// Columns: method, axis value, mean seconds, standard error.
void write_timing_csv(const TimingTable& table, std::ostream& out);

}  // namespace rankscreen
