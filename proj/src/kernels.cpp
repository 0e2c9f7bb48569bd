#include "crowdflow/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>

#include <omp.h>

namespace crowdflow::kernels {

namespace {

// Below these sizes fork/join overhead outweighs the loop body.
constexpr std::int64_t kMinParallelElems = 4096;

std::size_t bin_index(double value, double lo, double width,
                      std::size_t n_bins) {
  if (width <= 0.0) return 0;
  const double pos = (value - lo) / width;
  if (pos <= 0.0) return 0;
  auto idx = static_cast<std::size_t>(pos);
  return idx >= n_bins ? n_bins - 1 : idx;
}

}  // namespace

void pairwise_distances_serial(std::span<const Point> a,
                               std::span<const Point> b,
                               std::span<double> out) {
  assert(out.size() == a.size() * b.size());
  const std::size_t m = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double dx = a[i].x - b[j].x;
      const double dy = a[i].y - b[j].y;
      out[i * m + j] = std::sqrt(dx * dx + dy * dy);
    }
  }
}

void pairwise_distances(std::span<const Point> a, std::span<const Point> b,
                        std::span<double> out) {
  assert(out.size() == a.size() * b.size());
  const auto n = static_cast<std::int64_t>(a.size());
  const auto m = static_cast<std::int64_t>(b.size());
#pragma omp parallel for collapse(2) if (n * m >= kMinParallelElems)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < m; ++j) {
      const double dx = a[i].x - b[j].x;
      const double dy = a[i].y - b[j].y;
      out[i * m + j] = std::sqrt(dx * dx + dy * dy);
    }
  }
}

double sum_serial(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

double sum(std::span<const double> v) {
  const auto n = static_cast<std::int64_t>(v.size());
  double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) if (n >= kMinParallelElems)
  for (std::int64_t i = 0; i < n; ++i) acc += v[i];
  return acc;
}

MomentSums centered_moments_serial(std::span<const double> x,
                                   std::span<const double> y) {
  assert(x.size() == y.size());
  MomentSums m;
  if (x.empty()) return m;
  m.mean_x = sum_serial(x) / static_cast<double>(x.size());
  m.mean_y = sum_serial(y) / static_cast<double>(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - m.mean_x;
    m.sxx += dx * dx;
    m.sxy += dx * (y[i] - m.mean_y);
  }
  return m;
}

MomentSums centered_moments(std::span<const double> x,
                            std::span<const double> y) {
  assert(x.size() == y.size());
  MomentSums m;
  if (x.empty()) return m;
  const auto n = static_cast<std::int64_t>(x.size());
  m.mean_x = sum(x) / static_cast<double>(n);
  m.mean_y = sum(y) / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
#pragma omp parallel for reduction(+ : sxx, sxy) if (n >= kMinParallelElems)
  for (std::int64_t i = 0; i < n; ++i) {
    const double dx = x[i] - m.mean_x;
    sxx += dx * dx;
    sxy += dx * (y[i] - m.mean_y);
  }
  m.sxx = sxx;
  m.sxy = sxy;
  return m;
}

double abs_diff_sum_serial(std::span<const double> a,
                           std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return acc;
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const auto n = static_cast<std::int64_t>(a.size());
  double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) if (n >= kMinParallelElems)
  for (std::int64_t i = 0; i < n; ++i) acc += std::abs(a[i] - b[i]);
  return acc;
}

double squared_diff_sum_serial(std::span<const double> a,
                               std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double squared_diff_sum(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const auto n = static_cast<std::int64_t>(a.size());
  double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) if (n >= kMinParallelElems)
  for (std::int64_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double centered_square_sum_serial(std::span<const double> v, double center) {
  double acc = 0.0;
  for (double x : v) {
    const double d = x - center;
    acc += d * d;
  }
  return acc;
}

double centered_square_sum(std::span<const double> v, double center) {
  const auto n = static_cast<std::int64_t>(v.size());
  double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) if (n >= kMinParallelElems)
  for (std::int64_t i = 0; i < n; ++i) {
    const double d = v[i] - center;
    acc += d * d;
  }
  return acc;
}

std::vector<std::size_t> histogram_counts_serial(
    std::span<const double> values, double lo, double hi, std::size_t n_bins) {
  assert(n_bins >= 1);
  std::vector<std::size_t> counts(n_bins, 0);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  for (double v : values) ++counts[bin_index(v, lo, width, n_bins)];
  return counts;
}

std::vector<std::size_t> histogram_counts(std::span<const double> values,
                                          double lo, double hi,
                                          std::size_t n_bins) {
  assert(n_bins >= 1);
  std::vector<std::size_t> counts(n_bins, 0);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  const auto n = static_cast<std::int64_t>(values.size());
#pragma omp parallel if (n >= kMinParallelElems)
  {
    std::vector<std::size_t> local(n_bins, 0);
#pragma omp for nowait
    for (std::int64_t i = 0; i < n; ++i) {
      ++local[bin_index(values[i], lo, width, n_bins)];
    }
#pragma omp critical
    for (std::size_t b = 0; b < n_bins; ++b) counts[b] += local[b];
  }
  return counts;
}

}  // namespace crowdflow::kernels
