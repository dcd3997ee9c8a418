#include "rankscreen/screen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>

namespace rankscreen {

namespace {

// Positions into `scores`, best first.
std::vector<std::size_t> ranked_positions(const ScoreTable& scores) {
  if (scores.empty()) throw std::invalid_argument("rank_features needs at least one score");
  for (const auto& s : scores) {
    if (std::isnan(s.score)) {
      throw std::invalid_argument("score for feature " + std::to_string(s.feature) + " is NaN");
    }
  }
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].score != scores[b].score) return scores[a].score > scores[b].score;
    return scores[a].feature < scores[b].feature;
  });
  return idx;
}

}  // namespace

std::vector<FeatureIndex> rank_features(const ScoreTable& scores) {
  std::vector<FeatureIndex> ranking;
  ranking.reserve(scores.size());
  for (std::size_t k : ranked_positions(scores)) ranking.push_back(scores[k].feature);
  return ranking;
}

std::vector<FeatureIndex> soft_threshold(const ScoreTable& scores, double c, double kappa,
                                         std::size_t n) {
  const double threshold = c * std::pow(static_cast<double>(n), -kappa);
  std::vector<FeatureIndex> kept;
  if (scores.empty()) return kept;
  for (std::size_t k : ranked_positions(scores)) {
    if (!(scores[k].score >= threshold)) break;
    kept.push_back(scores[k].feature);
  }
  return kept;
}

ScreenResult select_top(ScoreTable scores, std::size_t d) {
  if (d < 1) throw std::invalid_argument("model size d must be >= 1");
  ScreenResult result;
  result.ranking = rank_features(scores);
  result.scores = std::move(scores);
  const std::size_t keep = std::min(d, result.ranking.size());
  result.selected.assign(result.ranking.begin(), result.ranking.begin() + static_cast<std::ptrdiff_t>(keep));
  return result;
}

ScreenResult cr_sis(const DataMatrix& data, const ResponseVector& y, const ScreenConfig& cfg) {
  cfg.validate();
  check_compatible(data, y);
  std::vector<FeatureIndex> all(data.cols());
  std::iota(all.begin(), all.end(), FeatureIndex{0});
  ScoreTable scores = batch_omega(data, y, all, data.rows(), cfg.seed, 0);

  if (const auto* hard = std::get_if<HardThreshold>(&cfg.mode)) {
    return select_top(std::move(scores), hard->d);
  }
  const auto& soft = std::get<SoftThreshold>(cfg.mode);
  ScreenResult result;
  result.ranking = rank_features(scores);
  result.selected = soft_threshold(scores, soft.c, soft.kappa, data.rows());
  result.scores = std::move(scores);
  return result;
}

}  // namespace rankscreen
