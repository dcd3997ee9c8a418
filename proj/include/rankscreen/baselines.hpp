#pragma once

#include <cstddef>
#include <span>

#include "rankscreen/core.hpp"
#include "rankscreen/rankstat.hpp"
#include "rankscreen/screen.hpp"

namespace rankscreen {

/// |Pearson correlation| of x and y; 0 when either side has zero variance.
double abs_pearson(std::span<const double> x, std::span<const double> y);

/// Absolute marginal Pearson correlation of every feature with y.
ScoreTable pearson_scores(const DataMatrix& data, const ResponseVector& y);

/// Squared distance correlation computed from double-centred pairwise
/// distance matrices, O(n^2). 0 when either distance variance vanishes.
double distance_correlation_sq(std::span<const double> x, std::span<const double> y);

ScoreTable dcor_scores(const DataMatrix& data, const ResponseVector& y);

/// Pearson-correlation screening, top d.
ScreenResult sis(const DataMatrix& data, const ResponseVector& y, std::size_t d);

/// Distance-correlation screening, top d.
ScreenResult dc_sis(const DataMatrix& data, const ResponseVector& y, std::size_t d);

}  // namespace rankscreen
