#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "narrframe/corpus.hpp"
#include "narrframe/metrics/errors.hpp"
#include "narrframe/vocab.hpp"

namespace narrframe::metrics {

// Item x annotator matrix of nominal labels; nullopt marks a missing label.
struct AgreementTable {
  std::vector<std::string> items;
  std::vector<std::string> annotators;
  std::vector<std::vector<std::optional<std::string>>> labels;  // [item][annotator]

  // Items and annotators in first-appearance order. A repeated
  // (article, annotator) pair keeps the last label.
  static AgreementTable from_annotations(std::span<const AnnotationRecord> records, Slot slot);

  std::optional<std::size_t> annotator_index(std::string_view id) const;
  // Labels of two annotators on the items both labelled.
  std::pair<std::vector<std::string>, std::vector<std::string>> aligned(std::size_t a,
                                                                        std::size_t b) const;
  // Total number of values on items with at least two labels.
  std::size_t pairable_values() const;
};

// Nominal Krippendorff's alpha from the coincidence matrix, using only
// pairable values. Returns 1 when there is neither observed nor expected
// disagreement; throws kDegenerateTable for <2 pairable values or when only
// expected disagreement vanishes.
double krippendorff_alpha(const AgreementTable& table);

// Cohen's kappa for two aligned raters. p_e = 1 gives 1.0 when p_o = 1,
// kDegenerateMarginals otherwise.
double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b);

// Gwet's AC1 with chance agreement (1/(K-1)) * sum_k pi_k (1 - pi_k), K = |classes|.
double gwet_ac1(std::span<const std::string> a, std::span<const std::string> b,
                std::span<const std::string> classes);

double agreement_rate(std::span<const std::string> a, std::span<const std::string> b);

struct PairAgreement {
  std::string annotator;
  std::size_t items = 0;
  double rate = 0.0;
  double kappa = 0.0;
  double ac1 = 0.0;
};

// Each annotator against a reference (expert) annotator, plus the averages.
struct ReferenceAgreement {
  std::string reference;
  std::vector<PairAgreement> pairs;
  double mean_rate = 0.0;
  double mean_kappa = 0.0;
  double mean_ac1 = 0.0;
};

ReferenceAgreement agreement_with_reference(const AgreementTable& table, std::string_view reference,
                                            std::span<const std::string> classes);

}  // namespace narrframe::metrics
