#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crowdflow/ingest.hpp"

namespace crowdflow {

// Simple linear model fitted by ordinary least squares.
struct RegressionModel {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n_samples = 0;
};

// Closed-form OLS fit: slope = sxy / sxx, intercept = mean_y - slope*mean_x.
// Throws std::invalid_argument on mismatched or too-short inputs and
// std::domain_error("degenerate design, slope undefined") when all x values
// coincide.
RegressionModel fit(std::span<const double> x, std::span<const double> y);

double predict(const RegressionModel& model, double x);

// Mean absolute error; throws std::invalid_argument on empty or mismatched
// inputs.
double mae(std::span<const double> predicted, std::span<const double> actual);

// Coefficient of determination, 1 - SS_res / SS_tot. Throws
// std::invalid_argument on mismatched or too-short inputs and
// std::domain_error("r2 undefined for constant target") when the actual
// values have no variance.
double r2_score(std::span<const double> predicted,
                std::span<const double> actual);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t frequency = 0;
};

// Dataset-evaluation summary. The model-free fields (mean, histogram, shape)
// come from summarize(); mae and r2 start out as NaN until a model has been
// scored.
struct EvaluationReport {
  double mae = 0.0;
  double r2 = 0.0;
  double mean_count = 0.0;
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<HistogramBin> count_histogram;
};

// Mean count plus an equal-width histogram over [min count, max count];
// bins are right-exclusive except the last. Throws std::invalid_argument on
// an empty dataset or n_bins == 0.
EvaluationReport summarize(const CountDataset& dataset, std::size_t n_bins);

struct PredictionRecord {
  std::string image_id;
  double predicted = 0.0;
  std::int64_t actual = 0;
};

// Prediction for one dataset record. `features` must align with the records
// the model was fitted on; when empty, the record index itself is the
// feature (the default regression setup). Throws std::out_of_range on a bad
// index.
PredictionRecord predict_count_for_record(const CountDataset& dataset,
                                          const RegressionModel& model,
                                          std::size_t record_index,
                                          std::span<const double> features = {});

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded Fisher-Yates shuffle, then the last ceil(n * test_fraction) indices
// form the held-out set. Both parts keep ascending order. Throws
// std::invalid_argument when test_fraction is outside (0, 1) or either part
// would be empty.
SplitIndices train_test_split(std::size_t n, double test_fraction,
                              std::uint64_t seed);

}  // namespace crowdflow
