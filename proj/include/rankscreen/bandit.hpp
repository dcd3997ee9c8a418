#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rankscreen/core.hpp"
#include "rankscreen/screen.hpp"

namespace rankscreen {

/// min(n, ceil(n(a^2+1) / (a^2 sqrt(n) + 1))), at least 2 when n >= 2.
/// alpha = 0 gives n; large alpha approaches sqrt(n).
std::size_t subsample_size(std::size_t n, double alpha);

/// alpha0 / eta^(round-1) for round >= 1.
double alpha_schedule(double alpha0, std::size_t round, double eta);

/// floor((current + d) / 2). Requires current > d >= 1.
std::size_t median_keep_count(std::size_t current, std::size_t d);

/// Uniform row permutation for `seed`; entry i is the source row of row i.
std::vector<std::uint32_t> shuffle_permutation(std::size_t n, SeedSpec seed);

/// Applies shuffle_permutation(n, seed) to the rows of data and y jointly.
std::pair<DataMatrix, ResponseVector> shuffle_rows(const DataMatrix& data, const ResponseVector& y,
                                                   SeedSpec seed);

/// Subsample-and-eliminate screening.
///
/// Rows are shuffled once. Round l (1-based) scores every surviving feature
/// on the first subsample_size(n, alpha0 / eta^(l-1)) shuffled rows and keeps
/// the top floor((survivors + d) / 2), until d features remain.
///
/// `scores` holds each feature's score from the last round it took part in.
/// `ranking` orders final survivors first, then features by how late they
/// were eliminated, and within one round by that round's score. When d >= p
/// no round runs: every feature is selected and `scores` is empty.
ScreenResult bandit_cr_sis(const DataMatrix& data, const ResponseVector& y, const BanditConfig& cfg);

}  // namespace rankscreen
