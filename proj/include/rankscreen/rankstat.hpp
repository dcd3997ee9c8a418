#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rankscreen/core.hpp"

namespace rankscreen {

/// Raised by chatterjee_xi when the response is constant.
class ConstantResponseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Response ranks shared by every feature scored against the same y.
///   rank_le[i] = #{k : y_k <= y_i}
///   rank_ge[i] = #{k : y_k >= y_i}
///   sum_l_term = sum_i rank_ge[i] * (n - rank_ge[i])
struct YRanks {
  std::vector<std::uint32_t> rank_le;
  std::vector<std::uint32_t> rank_ge;
  std::uint64_t sum_l_term = 0;

  std::size_t size() const noexcept { return rank_le.size(); }
};

/// O(n log n). Requires 2 <= y.size() <= kMaxSamples.
YRanks compute_y_ranks(std::span<const double> y);

/// Ascending argsort of x. Blocks of equal values are shuffled uniformly with
/// `stream`; a column without ties never touches the stream.
std::vector<std::uint32_t> argsort_random_ties(std::span<const double> x, RandomStream& stream);

/// Integer pieces of the estimators for one feature.
struct RankSums {
  std::uint64_t abs_diff_sum = 0;  // sum_{i<n} |r_{i+1} - r_i| in x-order
  std::int64_t end_diff = 0;       // r_n - r_1 in x-order
};

RankSums rank_sums(std::span<const double> x, const YRanks& yr, RandomStream& stream);

/// Screening statistic
///   sum l(n-l)/n^3 - sum|dr|/(2n^2) + (r_n - r_1)/(2n^2)
/// evaluated as one exact integer numerator over 2n^3.
double omega_from_sums(const RankSums& sums, const YRanks& yr);

/// Chatterjee's xi, 1 - n sum|dr| / (2 sum l(n-l)).
double xi_from_sums(const RankSums& sums, const YRanks& yr);

double chatterjee_omega(std::span<const double> x, const YRanks& yr, RandomStream& stream);
double chatterjee_xi(std::span<const double> x, const YRanks& yr, RandomStream& stream);

/// Feature index paired with its score.
struct ScoredFeature {
  FeatureIndex feature = 0;
  double score = 0.0;

  friend bool operator==(const ScoredFeature&, const ScoredFeature&) = default;
};

using ScoreTable = std::vector<ScoredFeature>;

/// Scores `features` on the first `rows` rows of (data, y). Ranks of y are
/// computed once; feature j breaks x-ties with stream (seed, tie-break, j, round).
/// Entries come back in the order of `features`.
ScoreTable batch_omega(const DataMatrix& data, const ResponseVector& y,
                       std::span<const FeatureIndex> features, std::size_t rows, SeedSpec seed,
                       std::uint64_t round);

/// As above, but row i of the subsample is row `row_order[i]` of the input.
/// Used by the bandit to score a prefix of a shuffled row order without
/// materialising the shuffled matrix.
ScoreTable batch_omega(const DataMatrix& data, const ResponseVector& y,
                       std::span<const std::uint32_t> row_order,
                       std::span<const FeatureIndex> features, std::size_t rows, SeedSpec seed,
                       std::uint64_t round);

}  // namespace rankscreen
