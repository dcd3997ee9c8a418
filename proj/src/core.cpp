#include "rankscreen/core.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rankscreen {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t absorb(std::uint64_t state, std::uint64_t word) noexcept {
  return mix64(state + kGamma + mix64(word + kGamma));
}

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NonFiniteValueError(std::string(what) + " contains a non-finite value");
    }
  }
}

}  // namespace

DataMatrix::DataMatrix(std::size_t n, std::size_t p, std::vector<double> column_major,
                       std::vector<std::string> names)
    : n_(n), p_(p), values_(std::move(column_major)), names_(std::move(names)) {
  if (n_ < 2) throw std::invalid_argument("DataMatrix needs at least 2 rows");
  if (p_ < 1) throw std::invalid_argument("DataMatrix needs at least 1 column");
  if (values_.size() != n_ * p_) {
    throw std::invalid_argument("DataMatrix value count does not match n*p");
  }
  require_finite(values_, "DataMatrix");
  if (names_.empty()) {
    names_.reserve(p_);
    for (std::size_t j = 0; j < p_; ++j) names_.push_back("x" + std::to_string(j + 1));
  } else if (names_.size() != p_) {
    throw std::invalid_argument("DataMatrix name count does not match p");
  }
}

DataMatrix DataMatrix::from_columns(const std::vector<std::vector<double>>& columns,
                                    std::vector<std::string> names) {
  if (columns.empty()) throw std::invalid_argument("DataMatrix needs at least 1 column");
  const std::size_t n = columns.front().size();
  std::vector<double> values;
  values.reserve(n * columns.size());
  for (const auto& c : columns) {
    if (c.size() != n) throw std::invalid_argument("DataMatrix columns differ in length");
    values.insert(values.end(), c.begin(), c.end());
  }
  return DataMatrix(n, columns.size(), std::move(values), std::move(names));
}

std::span<const double> DataMatrix::column(FeatureIndex j) const {
  if (j >= p_) throw std::out_of_range("DataMatrix column index out of range");
  return std::span<const double>(values_).subspan(j * n_, n_);
}

ResponseVector::ResponseVector(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_, "ResponseVector");
}

bool ResponseVector::is_constant() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v == values_.front(); });
}

void check_compatible(const DataMatrix& data, const ResponseVector& y) {
  if (y.size() != data.rows()) {
    throw std::invalid_argument("response length " + std::to_string(y.size()) +
                                " does not match row count " + std::to_string(data.rows()));
  }
}

RandomStream::result_type RandomStream::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = (*this)();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::uniform01() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

RandomStream derive_stream(SeedSpec seed, StreamPurpose purpose, std::uint64_t index,
                           std::uint64_t round) noexcept {
  std::uint64_t key = mix64(seed.global_seed ^ 0x6a09e667f3bcc909ULL);
  key = absorb(key, static_cast<std::uint64_t>(purpose));
  key = absorb(key, index);
  key = absorb(key, round);
  return RandomStream(key);
}

SeedSpec derive_seed(SeedSpec seed, StreamPurpose purpose, std::uint64_t index) noexcept {
  return SeedSpec{derive_stream(seed, purpose, index, 0)()};
}

std::size_t default_model_size(std::size_t n) {
  if (n < 3) throw std::invalid_argument("default_model_size requires n >= 3");
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) / std::log(static_cast<double>(n))));
}

void ScreenConfig::validate() const {
  if (const auto* hard = std::get_if<HardThreshold>(&mode)) {
    if (hard->d < 1) throw std::invalid_argument("hard threshold d must be >= 1");
    return;
  }
  const auto& soft = std::get<SoftThreshold>(mode);
  if (!(soft.c > 0.0) || !std::isfinite(soft.c)) {
    throw std::invalid_argument("soft threshold c must be a positive finite number");
  }
  if (!(soft.kappa > 0.0 && soft.kappa < 0.25)) {
    throw std::invalid_argument("soft threshold kappa must lie in (0, 1/4)");
  }
}

void BanditConfig::validate() const {
  if (d && *d < 1) throw std::invalid_argument("bandit d must be >= 1");
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) {
    throw std::invalid_argument("bandit alpha0 must be a nonnegative finite number");
  }
  if (!(eta > 1.0) || !std::isfinite(eta)) throw std::invalid_argument("bandit eta must exceed 1");
}

namespace {
int g_worker_threads = 0;
}

void set_worker_threads(int threads) {
  g_worker_threads = std::max(0, threads);
#ifdef _OPENMP
  if (g_worker_threads > 0) omp_set_num_threads(g_worker_threads);
#endif
}

int worker_threads() {
#ifdef _OPENMP
  return g_worker_threads > 0 ? g_worker_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rankscreen
