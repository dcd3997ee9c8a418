#pragma once

#include <cstddef>
#include <vector>

#include "rankscreen/core.hpp"
#include "rankscreen/rankstat.hpp"

namespace rankscreen {

/// One elimination round of the bandit screener.
struct RoundRecord {
  std::size_t round = 0;          // 1-based
  double alpha = 0.0;             // schedule value used for the subsample size
  std::size_t subsample_size = 0; // rows scored this round
  std::size_t survivors = 0;      // features kept after the round
  std::vector<FeatureIndex> surviving;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct ScreenResult {
  ScoreTable scores;
  /// Best first. For bandit runs, features that survived more rounds rank
  /// ahead of features eliminated earlier.
  std::vector<FeatureIndex> ranking;
  std::vector<FeatureIndex> selected;
  std::vector<RoundRecord> trace;

  friend bool operator==(const ScreenResult&, const ScreenResult&) = default;
};

/// Features by descending score; equal scores go to the smaller index first.
/// Throws std::invalid_argument on an empty table or a NaN score.
std::vector<FeatureIndex> rank_features(const ScoreTable& scores);

/// {j : score_j >= c * n^-kappa}, in ranking order.
std::vector<FeatureIndex> soft_threshold(const ScoreTable& scores, double c, double kappa,
                                         std::size_t n);

/// Full-sample screening by the Chatterjee statistic with a hard (top-d) or
/// soft (c * n^-kappa) cut. A hard d larger than p keeps every feature.
ScreenResult cr_sis(const DataMatrix& data, const ResponseVector& y, const ScreenConfig& cfg);

/// Top-d of `scores` as a ScreenResult; shared by the baseline screeners.
ScreenResult select_top(ScoreTable scores, std::size_t d);

}  // namespace rankscreen
