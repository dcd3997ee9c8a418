#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rankscreen {

using FeatureIndex = std::size_t;

/// Largest sample count accepted by the rank statistics. Above this the
/// integer rank sums may leave the unsigned 64-bit range.
inline constexpr std::size_t kMaxSamples = 3'000'000;

/// Raised when a value that must be finite is NaN or infinite.
class NonFiniteValueError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Column-major n x p matrix of finite predictor values.
class DataMatrix {
 public:
  DataMatrix() = default;

  /// `column_major` must hold n*p values, column j at [j*n, (j+1)*n).
  DataMatrix(std::size_t n, std::size_t p, std::vector<double> column_major,
             std::vector<std::string> names = {});

  /// Builds a matrix from a list of columns of equal length.
  static DataMatrix from_columns(const std::vector<std::vector<double>>& columns,
                                 std::vector<std::string> names = {});

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return p_; }

  std::span<const double> column(FeatureIndex j) const;
  double operator()(std::size_t i, FeatureIndex j) const noexcept { return values_[j * n_ + i]; }

  /// Column names; defaults to x1..xp when none were supplied.
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::span<const double> raw() const noexcept { return values_; }

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<double> values_;
  std::vector<std::string> names_;
};

/// Response vector y of finite values. A constant response is representable;
/// estimators that need a non-constant response reject it themselves.
class ResponseVector {
 public:
  ResponseVector() = default;
  explicit ResponseVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  bool is_constant() const noexcept;

 private:
  std::vector<double> values_;
};

/// Checks that `y` can be paired with `data`.
void check_compatible(const DataMatrix& data, const ResponseVector& y);

struct SeedSpec {
  std::uint64_t global_seed = 0;
};

/// Tags that separate the random streams drawn for different purposes.
enum class StreamPurpose : std::uint32_t {
  kTieBreak = 1,
  kShuffle = 2,
  kPredictors = 3,
  kNoise = 4,
  kReplicate = 5,
};

/// Counter-based random stream. Output k is a SplitMix64 finalisation of
/// key + (k+1)*gamma, so any stream is fully determined by its key.
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream for (seed, purpose, index, round). A pure function of its arguments.
RandomStream derive_stream(SeedSpec seed, StreamPurpose purpose, std::uint64_t index,
                           std::uint64_t round) noexcept;

/// Derives a child seed, e.g. one per benchmark replicate.
SeedSpec derive_seed(SeedSpec seed, StreamPurpose purpose, std::uint64_t index) noexcept;

/// floor(n / ln n), the customary screening model size. Requires n >= 3.
std::size_t default_model_size(std::size_t n);

struct HardThreshold {
  std::size_t d = 1;
};

struct SoftThreshold {
  double c = 0.0;
  double kappa = 0.0;
};

struct ScreenConfig {
  std::variant<HardThreshold, SoftThreshold> mode = HardThreshold{};
  SeedSpec seed{};

  /// Throws std::invalid_argument when the thresholds are out of range.
  void validate() const;
};

struct BanditConfig {
  /// Target model size; floor(n / ln n) when empty.
  std::optional<std::size_t> d;
  double alpha0 = 0.35;
  double eta = 1.1;
  SeedSpec seed{};

  void validate() const;
};

/// Sets the number of worker threads used for per-feature work (0 = runtime default).
void set_worker_threads(int threads);
int worker_threads();

}  // namespace rankscreen
