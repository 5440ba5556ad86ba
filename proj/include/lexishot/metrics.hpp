#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexishot/sampler.hpp"

namespace lexishot {

struct PredictionRecord {
  std::string id;
  std::string gold;
  std::string pred;
  std::size_t line = 0;  // source line, 0 when not read from a file
};

struct Scores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct ClassScores {
  std::string label;
  Scores scores;
  std::size_t support = 0;  // gold occurrences; summed over runs after aggregation
};

enum class StdKind { Sample, Population };

struct Spread {
  StdKind kind = StdKind::Sample;
  Scores macro;
  std::vector<Scores> per_class;  // parallel to MetricSummary::per_class
};

// Per-class scores follow the declared label order. Macro values are
// unweighted means over every declared label, zero-support ones included.
// After aggregation the scores are across-run means and `spread` holds the
// standard deviations.
struct MetricSummary {
  std::vector<ClassScores> per_class;
  Scores macro;
  std::size_t runs = 1;
  std::optional<Spread> spread;

  std::vector<std::string> labels() const;
};

// Any denominator of zero yields 0 for that precision, recall or F1.
// Throws DataError on empty input, a duplicate declared label, or a record
// whose gold or predicted label is not declared (naming its line).
MetricSummary macro_scores(std::span<const PredictionRecord> records, std::span<const std::string> labels);

// Mean and standard deviation of every metric across runs. A single run has
// zero spread. Throws DataError when label sets differ or the list is empty.
MetricSummary aggregate_seeds(std::span<const MetricSummary> summaries, StdKind kind = StdKind::Sample);

// macro_scores over the shot set's ids only. Throws DataError listing every
// shot id without a prediction, or on duplicate prediction ids.
MetricSummary score_shot_set(const ShotSet& shots, std::span<const PredictionRecord> predictions,
                             std::span<const std::string> labels);

// Predictions TSV: id<TAB>gold<TAB>pred, optional "id\tgold\tpred" header.
std::vector<PredictionRecord> load_predictions(std::string_view content, const std::string& source = {});
std::vector<PredictionRecord> load_predictions_file(const std::filesystem::path& path);

}  // namespace lexishot
