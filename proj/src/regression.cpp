#include "crowdflow/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crowdflow/kernels.hpp"
#include "crowdflow/rng.hpp"

namespace crowdflow {

RegressionModel fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("fit: x and y lengths differ");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("fit: need at least two samples");
  }
  const auto m = kernels::centered_moments(x, y);

  // sxx of a numerically-constant column is a tiny rounding residue rather
  // than exact zero; scale the cutoff by the data magnitude.
  double max_abs = 0.0;
  for (double v : x) max_abs = std::max(max_abs, std::abs(v));
  const double eps = std::numeric_limits<double>::epsilon() * (1.0 + max_abs);
  if (m.sxx <= static_cast<double>(x.size()) * eps * eps) {
    throw std::domain_error("degenerate design, slope undefined");
  }

  RegressionModel model;
  model.slope = m.sxy / m.sxx;
  model.intercept = m.mean_y - model.slope * m.mean_x;
  model.n_samples = x.size();
  return model;
}

double predict(const RegressionModel& model, double x) {
  return model.slope * x + model.intercept;
}

double mae(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("mae: lengths differ");
  }
  if (predicted.empty()) throw std::invalid_argument("mae: empty input");
  return kernels::abs_diff_sum(predicted, actual) /
         static_cast<double>(predicted.size());
}

double r2_score(std::span<const double> predicted,
                std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("r2: lengths differ");
  }
  if (predicted.size() < 2) {
    throw std::invalid_argument("r2: need at least two samples");
  }
  const double mean_actual =
      kernels::sum(actual) / static_cast<double>(actual.size());
  const double ss_tot = kernels::centered_square_sum(actual, mean_actual);

  double max_abs = 0.0;
  for (double v : actual) max_abs = std::max(max_abs, std::abs(v));
  const double eps = std::numeric_limits<double>::epsilon() * (1.0 + max_abs);
  if (ss_tot <= static_cast<double>(actual.size()) * eps * eps) {
    throw std::domain_error("r2 undefined for constant target");
  }

  const double ss_res = kernels::squared_diff_sum(predicted, actual);
  return 1.0 - ss_res / ss_tot;
}

EvaluationReport summarize(const CountDataset& dataset, std::size_t n_bins) {
  if (dataset.records.empty()) {
    throw std::invalid_argument("summarize: empty dataset");
  }
  if (n_bins == 0) throw std::invalid_argument("summarize: n_bins must be >= 1");

  std::vector<double> counts;
  counts.reserve(dataset.records.size());
  for (const auto& r : dataset.records) {
    counts.push_back(static_cast<double>(r.count));
  }
  const auto [min_it, max_it] = std::minmax_element(counts.begin(), counts.end());
  const double lo = *min_it;
  const double hi = *max_it;

  EvaluationReport report;
  report.mae = std::numeric_limits<double>::quiet_NaN();
  report.r2 = std::numeric_limits<double>::quiet_NaN();
  report.mean_count = kernels::sum(counts) / static_cast<double>(counts.size());
  report.n_rows = dataset.n_rows;
  report.n_cols = dataset.n_cols;

  const auto frequencies = kernels::histogram_counts(counts, lo, hi, n_bins);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  report.count_histogram.reserve(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    report.count_histogram.push_back(
        {lo + width * static_cast<double>(b),
         b + 1 == n_bins ? hi : lo + width * static_cast<double>(b + 1),
         frequencies[b]});
  }
  return report;
}

PredictionRecord predict_count_for_record(const CountDataset& dataset,
                                          const RegressionModel& model,
                                          std::size_t record_index,
                                          std::span<const double> features) {
  if (record_index >= dataset.records.size()) {
    throw std::out_of_range("record index " + std::to_string(record_index) +
                            " out of range (dataset has " +
                            std::to_string(dataset.records.size()) + " rows)");
  }
  if (!features.empty() && features.size() != dataset.records.size()) {
    throw std::invalid_argument(
        "feature vector length does not match dataset");
  }
  const double feature = features.empty()
                             ? static_cast<double>(record_index)
                             : features[record_index];
  const auto& record = dataset.records[record_index];
  return {record.image_id, predict(model, feature), record.count};
}

SplitIndices train_test_split(std::size_t n, double test_fraction,
                              std::uint64_t seed) {
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw std::invalid_argument("test fraction must be in (0, 1)");
  }
  const auto test_n = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) * test_fraction));
  if (test_n == 0 || test_n >= n) {
    throw std::invalid_argument("split leaves an empty train or test part");
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Xorshift64Star rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i + 1));
    std::swap(order[i], order[j]);
  }

  SplitIndices split;
  split.train.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(test_n));
  split.test.assign(order.end() - static_cast<std::ptrdiff_t>(test_n), order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace crowdflow
