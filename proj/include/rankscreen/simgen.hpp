#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankscreen/core.hpp"

namespace rankscreen {

/// Synthetic benchmark designs.
///   1a  Y = X1+...+X5 + e                     X ~ N(0, S),  e ~ N(0,1)
///   1b  same, X ~ t1(0, S), e ~ t1
///   1c  Y = exp(2(X1+...+X5)) + e
///   1d  Y ~ Poisson(exp(2(X1+...+X5) + e))
///   2a  Y = 5X1 + 2 sin(pi X2 / 2) + 2 X3 1{X3>0} + 2 exp(5 X4) + e
///   2b  Y = 2 X2^-2 + 4 X2^3 + 3 cos(X3) + 10 1{X4>0} + e
///   2c  Y = 1 - 5 (X2+X3)^3 exp(-5 (X1 + X4^3)) + e
///   2d  Y = 1 - 5 (X2+X3)^-3 exp(1 + 10 sin(pi X1 / 2) + 5 X4) + e
///   2e  Y = cos(X1) + X2 + exp(2 X2 + 2 X3 + e)
/// with S_ij = rho^|i-j|.
enum class ModelId { k1a, k1b, k1c, k1d, k2a, k2b, k2c, k2d, k2e };

std::optional<ModelId> parse_model_id(std::string_view text);
std::string_view model_name(ModelId id);

/// 0-based indices of the predictors each formula reads.
std::vector<FeatureIndex> model_active_set(ModelId id);

struct SimModelSpec {
  ModelId model = ModelId::k1a;
  std::size_t n = 1500;
  std::size_t p = 2000;
  double rho = 0.5;
  std::vector<FeatureIndex> active_set;
  SeedSpec seed{};
};

/// Spec with the model's active set; throws std::invalid_argument when p is
/// too small to hold it, n < 2 or |rho| >= 1.
SimModelSpec make_model_spec(ModelId id, std::size_t n, std::size_t p, SeedSpec seed,
                             double rho = 0.5);

/// Gaussian rows with covariance rho^|i-j|, via the AR(1) recursion.
/// Row i draws from stream (seed, purpose, i, 0).
DataMatrix gen_ar_gaussian(std::size_t n, std::size_t p, double rho, SeedSpec seed,
                           StreamPurpose purpose = StreamPurpose::kPredictors);

/// Multivariate t with one degree of freedom: AR(1) Gaussian row over sqrt(chi^2_1).
DataMatrix gen_t1(std::size_t n, std::size_t p, double rho, SeedSpec seed,
                  StreamPurpose purpose = StreamPurpose::kPredictors);

/// Noise-dependent part of a model for one row: the response itself, or the
/// Poisson rate for 1d. `x` must cover the model's active predictors.
double model_signal(ModelId id, std::span<const double> x, double noise);

/// Poisson draw; rates above 1e7 use round(l + sqrt(l) Z) clamped at 0.
double sample_poisson(double rate, RandomStream& stream);

/// Response for predictors X. Row i's noise comes from stream (seed, noise, i, 0).
/// Throws NonFiniteValueError when a row evaluates to a non-finite value.
ResponseVector gen_response(const SimModelSpec& spec, const DataMatrix& x);

struct SimDataset {
  DataMatrix x;
  ResponseVector y;
};

/// Predictors (Gaussian, or t1 for model 1b) followed by the response.
SimDataset simulate(const SimModelSpec& spec);

}  // namespace rankscreen
