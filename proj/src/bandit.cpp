#include "rankscreen/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rankscreen {

std::size_t subsample_size(std::size_t n, double alpha) {
  if (n <= 1) return n;
  if (!(alpha >= 0.0)) throw std::invalid_argument("subsample_size needs alpha >= 0");
  const double nd = static_cast<double>(n);
  const double a2 = alpha * alpha;
  const double t = nd * (a2 + 1.0) / (a2 * std::sqrt(nd) + 1.0);
  const double rounded = std::ceil(t);
  if (!(rounded < nd)) return n;
  return std::max<std::size_t>(2, static_cast<std::size_t>(rounded));
}

double alpha_schedule(double alpha0, std::size_t round, double eta) {
  if (round < 1) throw std::invalid_argument("alpha_schedule rounds are 1-based");
  if (!(eta > 1.0)) throw std::invalid_argument("alpha_schedule needs eta > 1");
  return alpha0 / std::pow(eta, static_cast<double>(round - 1));
}

std::size_t median_keep_count(std::size_t current, std::size_t d) {
  if (d < 1 || current <= d) {
    throw std::invalid_argument("median_keep_count needs current > d >= 1");
  }
  return (current + d) / 2;
}

std::vector<std::uint32_t> shuffle_permutation(std::size_t n, SeedSpec seed) {
  if (n > kMaxSamples) throw std::invalid_argument("row count exceeds the supported maximum");
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::uint32_t{0});
  RandomStream stream = derive_stream(seed, StreamPurpose::kShuffle, 0, 0);
  for (std::size_t len = n; len > 1; --len) {
    std::swap(perm[len - 1], perm[stream.uniform_below(len)]);
  }
  return perm;
}

std::pair<DataMatrix, ResponseVector> shuffle_rows(const DataMatrix& data, const ResponseVector& y,
                                                   SeedSpec seed) {
  check_compatible(data, y);
  const std::size_t n = data.rows();
  const auto perm = shuffle_permutation(n, seed);
  std::vector<double> values(n * data.cols());
  for (std::size_t j = 0; j < data.cols(); ++j) {
    const auto col = data.column(j);
    for (std::size_t i = 0; i < n; ++i) values[j * n + i] = col[perm[i]];
  }
  std::vector<double> yv(n);
  for (std::size_t i = 0; i < n; ++i) yv[i] = y[perm[i]];
  return {DataMatrix(n, data.cols(), std::move(values), data.names()), ResponseVector(std::move(yv))};
}

ScreenResult bandit_cr_sis(const DataMatrix& data, const ResponseVector& y, const BanditConfig& cfg) {
  cfg.validate();
  check_compatible(data, y);
  const std::size_t n = data.rows();
  const std::size_t p = data.cols();
  const std::size_t d = cfg.d ? *cfg.d : default_model_size(n);

  ScreenResult result;
  if (d >= p) {
    result.ranking.resize(p);
    std::iota(result.ranking.begin(), result.ranking.end(), FeatureIndex{0});
    result.selected = result.ranking;
    return result;
  }

  const auto order = shuffle_permutation(n, cfg.seed);
  std::vector<FeatureIndex> surviving(p);
  std::iota(surviving.begin(), surviving.end(), FeatureIndex{0});
  std::vector<double> last_score(p, 0.0);
  std::vector<std::size_t> rounds_survived(p, 0);

  for (std::size_t round = 1; surviving.size() > d; ++round) {
    const double alpha = alpha_schedule(cfg.alpha0, round, cfg.eta);
    const std::size_t rows = subsample_size(n, alpha);
    const ScoreTable scores = batch_omega(data, y, order, surviving, rows, cfg.seed, round);
    for (const auto& s : scores) last_score[s.feature] = s.score;

    const std::size_t keep = median_keep_count(surviving.size(), d);
    auto ranked = rank_features(scores);
    ranked.resize(keep);
    for (FeatureIndex j : ranked) rounds_survived[j] = round;
    surviving = std::move(ranked);
    result.trace.push_back({round, alpha, rows, keep, surviving});
  }

  result.scores.reserve(p);
  for (FeatureIndex j = 0; j < p; ++j) result.scores.push_back({j, last_score[j]});
  result.ranking.resize(p);
  std::iota(result.ranking.begin(), result.ranking.end(), FeatureIndex{0});
  std::sort(result.ranking.begin(), result.ranking.end(), [&](FeatureIndex a, FeatureIndex b) {
    if (rounds_survived[a] != rounds_survived[b]) return rounds_survived[a] > rounds_survived[b];
    if (last_score[a] != last_score[b]) return last_score[a] > last_score[b];
    return a < b;
  });
  result.selected = surviving;
  return result;
}

}  // namespace rankscreen
