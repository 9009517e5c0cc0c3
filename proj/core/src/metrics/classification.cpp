#include "narrframe/metrics/classification.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

namespace narrframe::metrics {

std::string_view to_string(MetricErrc e) {
  switch (e) {
    case MetricErrc::kLengthMismatch: return "LengthMismatch";
    case MetricErrc::kUnknownClassInGold: return "UnknownClassInGold";
    case MetricErrc::kEmptyInput: return "EmptyInput";
    case MetricErrc::kDegenerateTable: return "DegenerateTable";
    case MetricErrc::kDegenerateMarginals: return "DegenerateMarginals";
    case MetricErrc::kSingleClassVocabulary: return "SingleClassVocabulary";
  }
  return "?";
}

MetricError::MetricError(MetricErrc code, const std::string& detail)
    : Error(fmt::format("{}: {}", to_string(code), detail)), code_(code) {}

namespace {

void check_aligned(std::span<const std::string> gold, std::span<const std::string> pred) {
  if (gold.size() != pred.size()) {
    throw MetricError(MetricErrc::kLengthMismatch,
                      fmt::format("{} gold labels vs {} predictions", gold.size(), pred.size()));
  }
}

std::map<std::string_view, std::size_t> class_index(std::span<const std::string> classes) {
  std::map<std::string_view, std::size_t> idx;
  for (std::size_t i = 0; i < classes.size(); ++i) idx.emplace(classes[i], i);
  return idx;
}

}  // namespace

ClassificationReport classification_report(std::span<const std::string> gold,
                                           std::span<const std::string> pred,
                                           std::span<const std::string> classes,
                                           AbsentClassPolicy policy) {
  check_aligned(gold, pred);
  if (gold.empty()) throw MetricError(MetricErrc::kEmptyInput, "no items to score");
  if (classes.empty()) throw MetricError(MetricErrc::kEmptyInput, "empty class list");
  const auto idx = class_index(classes);

  ClassificationReport r;
  r.items = gold.size();
  r.per_class.resize(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) r.per_class[i].label = classes[i];

  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    auto g = idx.find(gold[i]);
    if (g == idx.end()) throw MetricError(MetricErrc::kUnknownClassInGold, "'" + gold[i] + "'");
    auto& gs = r.per_class[g->second];
    ++gs.support;
    if (pred[i] == kFailedLabel) ++r.failed;
    if (pred[i] == gold[i]) {
      ++gs.true_positives;
      ++correct;
      continue;
    }
    ++gs.false_negatives;
    if (auto p = idx.find(pred[i]); p != idx.end()) ++r.per_class[p->second].false_positives;
  }

  double sum = 0.0;
  std::size_t counted = 0;
  for (auto& c : r.per_class) {
    const auto predicted = c.true_positives + c.false_positives;
    c.precision = predicted ? static_cast<double>(c.true_positives) / predicted : 0.0;
    c.recall = c.support ? static_cast<double>(c.true_positives) / c.support : 0.0;
    c.f1 = c.precision + c.recall > 0 ? 2 * c.precision * c.recall / (c.precision + c.recall) : 0.0;
    c.absent = c.support == 0 && predicted == 0;
    if (c.absent && policy == AbsentClassPolicy::kExclude) continue;
    sum += c.f1;
    ++counted;
  }
  r.macro_f1 = counted ? sum / static_cast<double>(counted) : 0.0;
  r.accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());
  return r;
}

double macro_f1(std::span<const std::string> gold, std::span<const std::string> pred,
                std::span<const std::string> classes, AbsentClassPolicy policy) {
  return classification_report(gold, pred, classes, policy).macro_f1;
}

std::vector<std::string> most_frequent_baseline(std::span<const std::string> gold,
                                                std::span<const std::string> classes) {
  if (gold.empty()) throw MetricError(MetricErrc::kEmptyInput, "no gold labels");
  std::map<std::string_view, std::size_t> counts;
  for (const auto& g : gold) ++counts[g];
  // Class order decides ties; labels outside `classes` come after, in sorted order.
  std::string best;
  std::size_t best_count = 0;
  for (const auto& c : classes) {
    auto it = counts.find(c);
    if (it != counts.end() && it->second > best_count) {
      best = c;
      best_count = it->second;
    }
  }
  for (const auto& [label, n] : counts) {
    if (n > best_count) {
      best = std::string(label);
      best_count = n;
    }
  }
  return std::vector<std::string>(gold.size(), best);
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : counts) {
    for (auto v : row) t += v;
  }
  return t;
}

std::size_t ConfusionMatrix::row_sum(std::size_t row) const {
  std::size_t t = 0;
  for (auto v : counts.at(row)) t += v;
  return t;
}

std::size_t ConfusionMatrix::column_sum(std::size_t column) const {
  std::size_t t = 0;
  for (const auto& row : counts) t += row.at(column);
  return t;
}

std::size_t ConfusionMatrix::diagonal() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) t += counts[i][i];
  return t;
}

ConfusionMatrix confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                          std::span<const std::string> classes) {
  check_aligned(gold, pred);
  const auto idx = class_index(classes);
  ConfusionMatrix m;
  m.classes.assign(classes.begin(), classes.end());
  m.counts.assign(classes.size(), std::vector<std::size_t>(classes.size() + 1, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    auto g = idx.find(gold[i]);
    if (g == idx.end()) throw MetricError(MetricErrc::kUnknownClassInGold, "'" + gold[i] + "'");
    auto p = idx.find(pred[i]);
    ++m.counts[g->second][p == idx.end() ? m.failed_column() : p->second];
  }
  return m;
}

}  // namespace narrframe::metrics
