#include "rankscreen/simgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rankscreen {

namespace {

constexpr std::array<std::pair<std::string_view, ModelId>, 9> kModelNames{{
    {"1a", ModelId::k1a},
    {"1b", ModelId::k1b},
    {"1c", ModelId::k1c},
    {"1d", ModelId::k1d},
    {"2a", ModelId::k2a},
    {"2b", ModelId::k2b},
    {"2c", ModelId::k2c},
    {"2d", ModelId::k2d},
    {"2e", ModelId::k2e},
}};

constexpr double kPoissonNormalCutoff = 1e7;

double standard_normal(RandomStream& stream) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(stream);
}

void check_design(std::size_t n, std::size_t p, double rho) {
  if (n < 2 || p < 1) throw std::invalid_argument("simulation needs n >= 2 and p >= 1");
  if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("AR parameter must satisfy |rho| < 1");
}

// Fills row i of a column-major matrix with an AR(1) Gaussian draw.
void ar_row(double* values, std::size_t n, std::size_t p, std::size_t i, double rho,
            RandomStream& stream) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double innovation = std::sqrt(1.0 - rho * rho);
  double prev = normal(stream);
  values[i] = prev;
  for (std::size_t j = 1; j < p; ++j) {
    prev = rho * prev + innovation * normal(stream);
    values[j * n + i] = prev;
  }
}

template <typename RowFn>
DataMatrix generate_rows(std::size_t n, std::size_t p, RowFn&& fill_row) {
  std::vector<double> values(n * p);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) fill_row(values.data(), static_cast<std::size_t>(i));
  return DataMatrix(n, p, std::move(values));
}

}  // namespace

std::optional<ModelId> parse_model_id(std::string_view text) {
  for (const auto& [name, id] : kModelNames) {
    if (name == text) return id;
  }
  return std::nullopt;
}

std::string_view model_name(ModelId id) {
  for (const auto& [name, model] : kModelNames) {
    if (model == id) return name;
  }
  return "?";
}

std::vector<FeatureIndex> model_active_set(ModelId id) {
  switch (id) {
    case ModelId::k1a:
    case ModelId::k1b:
    case ModelId::k1c:
    case ModelId::k1d:
      return {0, 1, 2, 3, 4};
    case ModelId::k2a:
    case ModelId::k2c:
    case ModelId::k2d:
      return {0, 1, 2, 3};
    case ModelId::k2b:
      return {1, 2, 3};
    case ModelId::k2e:
      return {0, 1, 2};
  }
  return {};
}

SimModelSpec make_model_spec(ModelId id, std::size_t n, std::size_t p, SeedSpec seed, double rho) {
  check_design(n, p, rho);
  SimModelSpec spec{id, n, p, rho, model_active_set(id), seed};
  const FeatureIndex widest = *std::max_element(spec.active_set.begin(), spec.active_set.end());
  if (p <= widest) {
    throw std::invalid_argument("model " + std::string(model_name(id)) + " needs p >= " +
                                std::to_string(widest + 1));
  }
  return spec;
}

DataMatrix gen_ar_gaussian(std::size_t n, std::size_t p, double rho, SeedSpec seed,
                           StreamPurpose purpose) {
  check_design(n, p, rho);
  return generate_rows(n, p, [&](double* values, std::size_t i) {
    RandomStream stream = derive_stream(seed, purpose, i, 0);
    ar_row(values, n, p, i, rho, stream);
  });
}

DataMatrix gen_t1(std::size_t n, std::size_t p, double rho, SeedSpec seed, StreamPurpose purpose) {
  check_design(n, p, rho);
  return generate_rows(n, p, [&](double* values, std::size_t i) {
    RandomStream stream = derive_stream(seed, purpose, i, 0);
    ar_row(values, n, p, i, rho, stream);
    const double chi = std::abs(standard_normal(stream));
    for (std::size_t j = 0; j < p; ++j) values[j * n + i] /= chi;
  });
}

double model_signal(ModelId id, std::span<const double> x, double noise) {
  using std::numbers::pi;
  const auto sum5 = [&] { return x[0] + x[1] + x[2] + x[3] + x[4]; };
  switch (id) {
    case ModelId::k1a:
    case ModelId::k1b:
      return sum5() + noise;
    case ModelId::k1c:
      return std::exp(2.0 * sum5()) + noise;
    case ModelId::k1d:
      return std::exp(2.0 * sum5() + noise);
    case ModelId::k2a:
      return 5.0 * x[0] + 2.0 * std::sin(pi * x[1] / 2.0) + (x[2] > 0.0 ? 2.0 * x[2] : 0.0) +
             2.0 * std::exp(5.0 * x[3]) + noise;
    case ModelId::k2b:
      return 2.0 / (x[1] * x[1]) + 4.0 * x[1] * x[1] * x[1] + 3.0 * std::cos(x[2]) +
             (x[3] > 0.0 ? 10.0 : 0.0) + noise;
    case ModelId::k2c: {
      const double s = x[1] + x[2];
      return 1.0 - 5.0 * s * s * s * std::exp(-5.0 * (x[0] + x[3] * x[3] * x[3])) + noise;
    }
    case ModelId::k2d: {
      const double s = x[1] + x[2];
      return 1.0 - 5.0 / (s * s * s) * std::exp(1.0 + 10.0 * std::sin(pi * x[0] / 2.0) + 5.0 * x[3]) +
             noise;
    }
    case ModelId::k2e:
      return std::cos(x[0]) + x[1] + std::exp(2.0 * x[1] + 2.0 * x[2] + noise);
  }
  throw std::invalid_argument("unknown model");
}

double sample_poisson(double rate, RandomStream& stream) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw NonFiniteValueError("Poisson rate must be finite and nonnegative");
  }
  if (rate == 0.0) return 0.0;
  if (rate > kPoissonNormalCutoff) {
    return std::max(0.0, std::round(rate + std::sqrt(rate) * standard_normal(stream)));
  }
  std::poisson_distribution<long long> poisson(rate);
  return static_cast<double>(poisson(stream));
}

ResponseVector gen_response(const SimModelSpec& spec, const DataMatrix& x) {
  const std::size_t n = x.rows();
  const FeatureIndex widest = *std::max_element(spec.active_set.begin(), spec.active_set.end());
  if (x.cols() <= widest) throw std::invalid_argument("predictor matrix lacks active columns");
  const std::size_t width = std::min<std::size_t>(x.cols(), 5);
  std::vector<double> y(n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    RandomStream stream = derive_stream(spec.seed, StreamPurpose::kNoise, i, 0);
    std::array<double, 5> row{};
    for (std::size_t j = 0; j < width; ++j) row[j] = x(i, j);
    double noise = 0.0;
    if (spec.model == ModelId::k1b) {
      const double num = standard_normal(stream);
      noise = num / std::abs(standard_normal(stream));
    } else {
      noise = standard_normal(stream);
    }
    double value = model_signal(spec.model, row, noise);
    if (spec.model == ModelId::k1d && std::isfinite(value)) value = sample_poisson(value, stream);
    y[i] = value;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(y[i])) {
      throw NonFiniteValueError("model " + std::string(model_name(spec.model)) +
                                " produced a non-finite response at row " + std::to_string(i + 1));
    }
  }
  return ResponseVector(std::move(y));
}

SimDataset simulate(const SimModelSpec& spec) {
  DataMatrix x = spec.model == ModelId::k1b ? gen_t1(spec.n, spec.p, spec.rho, spec.seed)
                                            : gen_ar_gaussian(spec.n, spec.p, spec.rho, spec.seed);
  ResponseVector y = gen_response(spec, x);
  return {std::move(x), std::move(y)};
}

}  // namespace rankscreen
