#include "rankscreen/rankstat.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace rankscreen {

namespace {

void check_sample_count(std::size_t n) {
  if (n < 2) throw std::invalid_argument("rank statistics need at least 2 samples");
  if (n > kMaxSamples) {
    throw std::invalid_argument("sample count " + std::to_string(n) + " exceeds the supported maximum " +
                                std::to_string(kMaxSamples));
  }
}

// (value, index) pairs sorted ascending; equal values keep index order.
void sorted_pairs(std::span<const double> x, std::vector<std::pair<double, std::uint32_t>>& out) {
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = {x[i], static_cast<std::uint32_t>(i)};
  std::sort(out.begin(), out.end());
}

void argsort_into(std::span<const double> x, RandomStream& stream,
                  std::vector<std::pair<double, std::uint32_t>>& pairs,
                  std::vector<std::uint32_t>& order) {
  sorted_pairs(x, pairs);
  const std::size_t n = pairs.size();
  order.resize(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = pairs[i].second;
  // Fisher-Yates inside each tied block.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && pairs[end].first == pairs[start].first) ++end;
    for (std::size_t len = end - start; len > 1; --len) {
      const std::size_t k = stream.uniform_below(len);
      std::swap(order[start + len - 1], order[start + k]);
    }
    start = end;
  }
}

struct Workspace {
  std::vector<std::pair<double, std::uint32_t>> pairs;
  std::vector<std::uint32_t> order;
  std::vector<double> gathered;
};

RankSums rank_sums_with(std::span<const double> x, const YRanks& yr, RandomStream& stream,
                        Workspace& ws) {
  if (x.size() != yr.size()) {
    throw std::invalid_argument("feature length does not match response length");
  }
  argsort_into(x, stream, ws.pairs, ws.order);
  const auto& r = yr.rank_le;
  RankSums sums;
  std::uint32_t prev = r[ws.order.front()];
  for (std::size_t i = 1; i < ws.order.size(); ++i) {
    const std::uint32_t cur = r[ws.order[i]];
    sums.abs_diff_sum += cur > prev ? cur - prev : prev - cur;
    prev = cur;
  }
  sums.end_diff = static_cast<std::int64_t>(r[ws.order.back()]) -
                  static_cast<std::int64_t>(r[ws.order.front()]);
  return sums;
}

}  // namespace

YRanks compute_y_ranks(std::span<const double> y) {
  check_sample_count(y.size());
  const std::size_t n = y.size();
  std::vector<std::pair<double, std::uint32_t>> pairs;
  sorted_pairs(y, pairs);

  YRanks yr;
  yr.rank_le.resize(n);
  yr.rank_ge.resize(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && pairs[end].first == pairs[start].first) ++end;
    const auto le = static_cast<std::uint32_t>(end);
    const auto ge = static_cast<std::uint32_t>(n - start);
    for (std::size_t k = start; k < end; ++k) {
      yr.rank_le[pairs[k].second] = le;
      yr.rank_ge[pairs[k].second] = ge;
    }
    yr.sum_l_term += static_cast<std::uint64_t>(end - start) * ge * (n - ge);
    start = end;
  }
  return yr;
}

std::vector<std::uint32_t> argsort_random_ties(std::span<const double> x, RandomStream& stream) {
  std::vector<std::pair<double, std::uint32_t>> pairs;
  std::vector<std::uint32_t> order;
  if (x.empty()) return order;
  argsort_into(x, stream, pairs, order);
  return order;
}

RankSums rank_sums(std::span<const double> x, const YRanks& yr, RandomStream& stream) {
  check_sample_count(x.size());
  Workspace ws;
  return rank_sums_with(x, yr, stream, ws);
}

namespace {
// Wide enough for n * sum|dr| at the largest supported n.
__extension__ using Wide = __int128;
}  // namespace

double omega_from_sums(const RankSums& sums, const YRanks& yr) {
  const auto n = static_cast<Wide>(yr.size());
  const Wide numerator = 2 * static_cast<Wide>(yr.sum_l_term) -
                         n * static_cast<Wide>(sums.abs_diff_sum) +
                         n * static_cast<Wide>(sums.end_diff);
  const double denom = 2.0 * static_cast<double>(yr.size()) * static_cast<double>(yr.size()) *
                       static_cast<double>(yr.size());
  return static_cast<double>(numerator) / denom;
}

double xi_from_sums(const RankSums& sums, const YRanks& yr) {
  if (yr.sum_l_term == 0) {
    throw ConstantResponseError("Chatterjee's xi is undefined for a constant response");
  }
  const auto n = static_cast<Wide>(yr.size());
  const Wide denom = 2 * static_cast<Wide>(yr.sum_l_term);
  const Wide numerator = denom - n * static_cast<Wide>(sums.abs_diff_sum);
  return static_cast<double>(numerator) / static_cast<double>(denom);
}

double chatterjee_omega(std::span<const double> x, const YRanks& yr, RandomStream& stream) {
  return omega_from_sums(rank_sums(x, yr, stream), yr);
}

double chatterjee_xi(std::span<const double> x, const YRanks& yr, RandomStream& stream) {
  if (yr.sum_l_term == 0) {
    throw ConstantResponseError("Chatterjee's xi is undefined for a constant response");
  }
  return xi_from_sums(rank_sums(x, yr, stream), yr);
}

namespace {

template <typename ColumnFn>
ScoreTable batch_omega_impl(std::span<const FeatureIndex> features, const YRanks& yr,
                            SeedSpec seed, std::uint64_t round, std::size_t p,
                            ColumnFn&& column_of) {
  if (features.empty()) throw std::invalid_argument("batch_omega needs at least one feature");
  for (FeatureIndex j : features) {
    if (j >= p) throw std::out_of_range("feature index out of range");
  }
  ScoreTable out(features.size());
  const auto count = static_cast<std::ptrdiff_t>(features.size());
#pragma omp parallel
  {
    Workspace ws;
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      const FeatureIndex j = features[static_cast<std::size_t>(k)];
      RandomStream stream = derive_stream(seed, StreamPurpose::kTieBreak, j, round);
      const RankSums sums = rank_sums_with(column_of(j, ws.gathered), yr, stream, ws);
      out[static_cast<std::size_t>(k)] = {j, omega_from_sums(sums, yr)};
    }
  }
  return out;
}

void check_rows(const DataMatrix& data, const ResponseVector& y, std::size_t rows) {
  check_compatible(data, y);
  if (rows < 2) throw std::invalid_argument("batch_omega needs a prefix of at least 2 rows");
  if (rows > data.rows()) throw std::invalid_argument("batch_omega prefix exceeds the row count");
}

}  // namespace

ScoreTable batch_omega(const DataMatrix& data, const ResponseVector& y,
                       std::span<const FeatureIndex> features, std::size_t rows, SeedSpec seed,
                       std::uint64_t round) {
  check_rows(data, y, rows);
  const YRanks yr = compute_y_ranks(y.values().first(rows));
  return batch_omega_impl(features, yr, seed, round, data.cols(),
                          [&](FeatureIndex j, std::vector<double>&) {
                            return data.column(j).first(rows);
                          });
}

ScoreTable batch_omega(const DataMatrix& data, const ResponseVector& y,
                       std::span<const std::uint32_t> row_order,
                       std::span<const FeatureIndex> features, std::size_t rows, SeedSpec seed,
                       std::uint64_t round) {
  check_rows(data, y, rows);
  if (row_order.size() < rows) throw std::invalid_argument("row order shorter than the prefix");
  std::vector<double> y_prefix(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_order[i] >= data.rows()) throw std::out_of_range("row order entry out of range");
    y_prefix[i] = y[row_order[i]];
  }
  const YRanks yr = compute_y_ranks(y_prefix);
  return batch_omega_impl(features, yr, seed, round, data.cols(),
                          [&](FeatureIndex j, std::vector<double>& buf) {
                            const auto col = data.column(j);
                            buf.resize(rows);
                            for (std::size_t i = 0; i < rows; ++i) buf[i] = col[row_order[i]];
                            return std::span<const double>(buf);
                          });
}

}  // namespace rankscreen
