#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/metrics/errors.hpp"

namespace narrframe::metrics {

// Prediction placeholder for unparseable model output. Never equal to a gold label.
inline constexpr std::string_view kFailedLabel = "<FAILED>";

// How classes with no gold and no predicted occurrence enter the macro mean.
enum class AbsentClassPolicy {
  kZeroFill,  // contribute F1 = 0
  kExclude,   // dropped from the mean
};

struct ClassScore {
  std::string label;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t support = 0;  // gold occurrences
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool absent = false;
};

struct ClassificationReport {
  std::vector<ClassScore> per_class;  // in `classes` order
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  std::size_t items = 0;
  std::size_t failed = 0;  // predictions equal to kFailedLabel
};

ClassificationReport classification_report(std::span<const std::string> gold,
                                           std::span<const std::string> pred,
                                           std::span<const std::string> classes,
                                           AbsentClassPolicy policy = AbsentClassPolicy::kZeroFill);

// Unweighted mean of per-class F1 over `classes`. Predictions outside
// `classes` (including kFailedLabel) are wrong for every class.
double macro_f1(std::span<const std::string> gold, std::span<const std::string> pred,
                std::span<const std::string> classes,
                AbsentClassPolicy policy = AbsentClassPolicy::kZeroFill);

// Constant prediction of the modal gold label; ties go to the earlier class.
std::vector<std::string> most_frequent_baseline(std::span<const std::string> gold,
                                                std::span<const std::string> classes);

// Rows are gold classes; columns are the same classes plus a trailing FAILED
// column for kFailedLabel and any prediction outside `classes`.
struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t failed_column() const { return classes.size(); }
  std::size_t total() const;
  std::size_t row_sum(std::size_t row) const;
  std::size_t column_sum(std::size_t column) const;
  std::size_t diagonal() const;
};

ConfusionMatrix confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                          std::span<const std::string> classes);

}  // namespace narrframe::metrics
