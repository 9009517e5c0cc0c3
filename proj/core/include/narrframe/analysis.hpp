#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/catalog.hpp"
#include "narrframe/corpus.hpp"
#include "narrframe/error.hpp"
#include "narrframe/vocab.hpp"

namespace narrframe::analysis {

// article id -> label
using LabelMap = std::map<std::string, std::string, std::less<>>;

// Gold labels for one slot, or gold_narrative when `slot` is nullopt.
LabelMap gold_labels(std::span<const ArticleRecord> corpus, std::optional<Slot> slot);

// Display order for a slot's classes: taxonomy order then NONE for roles,
// enum order for scalar slots, catalog order for narratives.
std::vector<std::string> class_order(std::optional<Slot> slot, const Taxonomy& taxonomy,
                                     const Catalog* catalog);

struct FrequencyTable {
  std::vector<std::string> classes;
  std::vector<std::size_t> counts;
  std::vector<double> proportions;
  std::size_t total = 0;
  std::size_t unlabeled = 0;  // corpus articles without a label
};

class NoLabels : public Error {
 public:
  NoLabels();
};

// Counts over corpus articles that have a label. `classes` fixes the order;
// labels outside it are appended in sorted order. Throws NoLabels.
FrequencyTable distribution(std::span<const ArticleRecord> corpus, const LabelMap& labels,
                            std::span<const std::string> classes);

enum class MetadataField { kLeaning, kYear, kOutlet };
std::optional<MetadataField> metadata_field_from_string(std::string_view s);
std::string_view to_string(MetadataField f);

class UnknownMetadataField : public Error {
 public:
  explicit UnknownMetadataField(std::string_view field);
};

// Rows are slot classes, columns metadata values.
struct ContingencyTable {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> row_totals;
  std::vector<std::size_t> column_totals;
  std::size_t total = 0;
  // Labelled articles lacking the metadata field, per row and overall.
  std::vector<std::size_t> excluded_per_row;
  std::size_t excluded = 0;

  // count / row total
  std::vector<std::vector<double>> row_shares() const;
  // count / column total (share within one metadata value)
  std::vector<std::vector<double>> column_shares() const;
  // count / total
  std::vector<std::vector<double>> global_shares() const;
};

// Throws UnknownMetadataField when no article carries the field, NoLabels
// when nothing is labelled.
ContingencyTable crosstab(std::span<const ArticleRecord> corpus, const LabelMap& labels,
                          std::span<const std::string> classes, MetadataField field);

struct IntersectionTable {
  std::vector<std::string> narratives;
  std::vector<std::string> generic_frames;
  std::vector<std::vector<std::size_t>> counts;
  // Shannon entropy (bits) of each narrative row's generic-frame distribution.
  std::vector<double> entropy;
  std::size_t total = 0;
  std::size_t skipped = 0;  // articles with no narrative label or an empty generic set
};

class NoGenericFrames : public Error {
 public:
  NoGenericFrames();
};

// Each article adds one count per generic frame it carries.
IntersectionTable frame_intersection(std::span<const ArticleRecord> corpus,
                                     const LabelMap& narratives,
                                     std::span<const std::string> narrative_order);

}  // namespace narrframe::analysis
