#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crowdflow/types.hpp"

namespace crowdflow::kernels {

// Data-parallel inner loops of the engine, OpenMP-parallelised. Every kernel
// has a *_serial twin with identical semantics; the test suite pins the
// parallel versions against the serial ones and bench/crowdflow_bench
// compares their throughput.
//
// pairwise_distances and histogram_counts compute each output element (or
// integer count) independently, so their results do not depend on the thread
// count. The floating-point reductions may reassociate sums, so across
// differing thread counts they agree only to rounding error.

// out[i * b.size() + j] = Euclidean distance between a[i] and b[j].
// Requires out.size() == a.size() * b.size().
void pairwise_distances(std::span<const Point> a, std::span<const Point> b,
                        std::span<double> out);
void pairwise_distances_serial(std::span<const Point> a,
                               std::span<const Point> b,
                               std::span<double> out);

double sum(std::span<const double> v);
double sum_serial(std::span<const double> v);

// Centered second moments of paired samples; requires x.size() == y.size().
// sxx = sum((x - mean_x)^2), sxy = sum((x - mean_x) * (y - mean_y)).
struct MomentSums {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
};
MomentSums centered_moments(std::span<const double> x,
                            std::span<const double> y);
MomentSums centered_moments_serial(std::span<const double> x,
                                   std::span<const double> y);

// sum(|a[i] - b[i]|); requires equal sizes.
double abs_diff_sum(std::span<const double> a, std::span<const double> b);
double abs_diff_sum_serial(std::span<const double> a,
                           std::span<const double> b);

// sum((a[i] - b[i])^2); requires equal sizes.
double squared_diff_sum(std::span<const double> a, std::span<const double> b);
double squared_diff_sum_serial(std::span<const double> a,
                               std::span<const double> b);

// sum((v[i] - center)^2).
double centered_square_sum(std::span<const double> v, double center);
double centered_square_sum_serial(std::span<const double> v, double center);

// Equal-width bin counts over [lo, hi]; bins are right-exclusive except the
// last, which includes hi. Values outside [lo, hi] are clamped into the edge
// bins. A degenerate range (lo == hi) puts everything into bin 0. Requires
// n_bins >= 1.
std::vector<std::size_t> histogram_counts(std::span<const double> values,
                                          double lo, double hi,
                                          std::size_t n_bins);
std::vector<std::size_t> histogram_counts_serial(std::span<const double> values,
                                                 double lo, double hi,
                                                 std::size_t n_bins);

}  // namespace crowdflow::kernels
