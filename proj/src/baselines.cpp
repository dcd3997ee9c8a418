#include "rankscreen/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rankscreen {

namespace {

// Double-centred |y_i - y_j| as a dense row-major n x n matrix, plus its
// squared distance variance.
struct CentredDistances {
  std::size_t n = 0;
  std::vector<double> centred;
  double dvar_sq = 0.0;
};

CentredDistances centre_distances(std::span<const double> v) {
  const std::size_t n = v.size();
  CentredDistances out;
  out.n = n;
  out.centred.resize(n * n);
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dist = std::abs(v[i] - v[j]);
      out.centred[i * n + j] = dist;
      s += dist;
    }
    row_mean[i] = s / static_cast<double>(n);
    grand += s;
  }
  grand /= static_cast<double>(n * n);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double& c = out.centred[i * n + j];
      c = c - row_mean[i] - row_mean[j] + grand;
      sq += c * c;
    }
  }
  out.dvar_sq = sq / static_cast<double>(n * n);
  return out;
}

// Since the y matrix is double-centred, sum A_ij B_ij = sum a_ij B_ij, so the
// x side only needs raw distances for the covariance. Its own distance
// variance follows from sum a^2 - 2n sum r_i^2 + n^2 g^2.
double dcor_sq_against(std::span<const double> x, const CentredDistances& y) {
  const std::size_t n = y.n;
  if (y.dvar_sq <= 0.0) return 0.0;
  double cov = 0.0;
  double sum_sq = 0.0;
  double row_sq = 0.0;
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    const double* b = &y.centred[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      const double a = std::abs(x[i] - x[j]);
      cov += a * b[j];
      sum_sq += a * a;
      row += a;
    }
    const double rm = row / static_cast<double>(n);
    row_sq += rm * rm;
    grand += row;
  }
  const double nn = static_cast<double>(n);
  grand /= nn * nn;
  const double dvar_x = (sum_sq - 2.0 * nn * row_sq + nn * nn * grand * grand) / (nn * nn);
  if (!(dvar_x > 0.0)) return 0.0;
  const double dcov = cov / (nn * nn);
  const double r = dcov / std::sqrt(dvar_x * y.dvar_sq);
  return std::clamp(r, 0.0, 1.0);
}

}  // namespace

double abs_pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("abs_pearson length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("abs_pearson needs at least 2 samples");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
  return std::min(1.0, std::abs(sxy) / std::sqrt(sxx * syy));
}

ScoreTable pearson_scores(const DataMatrix& data, const ResponseVector& y) {
  check_compatible(data, y);
  ScoreTable out(data.cols());
  const auto p = static_cast<std::ptrdiff_t>(data.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < p; ++j) {
    const auto f = static_cast<FeatureIndex>(j);
    out[f] = {f, abs_pearson(data.column(f), y.values())};
  }
  return out;
}

double distance_correlation_sq(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("distance correlation length mismatch");
  if (x.size() < 2) throw std::invalid_argument("distance correlation needs at least 2 samples");
  return dcor_sq_against(x, centre_distances(y));
}

ScoreTable dcor_scores(const DataMatrix& data, const ResponseVector& y) {
  check_compatible(data, y);
  const CentredDistances centred_y = centre_distances(y.values());
  ScoreTable out(data.cols());
  const auto p = static_cast<std::ptrdiff_t>(data.cols());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t j = 0; j < p; ++j) {
    const auto f = static_cast<FeatureIndex>(j);
    out[f] = {f, dcor_sq_against(data.column(f), centred_y)};
  }
  return out;
}

ScreenResult sis(const DataMatrix& data, const ResponseVector& y, std::size_t d) {
  return select_top(pearson_scores(data, y), d);
}

ScreenResult dc_sis(const DataMatrix& data, const ResponseVector& y, std::size_t d) {
  return select_top(dcor_scores(data, y), d);
}

}  // namespace rankscreen
