#include "narrframe/metrics/agreement.hpp"

#include <map>
#include <set>

#include <fmt/format.h>

namespace narrframe::metrics {

AgreementTable AgreementTable::from_annotations(std::span<const AnnotationRecord> records, Slot slot) {
  AgreementTable t;
  std::map<std::string, std::size_t, std::less<>> item_idx;
  std::map<std::string, std::size_t, std::less<>> annot_idx;
  for (const auto& r : records) {
    if (r.slot != slot) continue;
    auto [it, fresh_item] = item_idx.emplace(r.article_id, t.items.size());
    if (fresh_item) {
      t.items.push_back(r.article_id);
      t.labels.emplace_back(t.annotators.size());
    }
    auto [at, fresh_annot] = annot_idx.emplace(r.annotator_id, t.annotators.size());
    if (fresh_annot) {
      t.annotators.push_back(r.annotator_id);
      for (auto& row : t.labels) row.resize(t.annotators.size());
    }
    t.labels[it->second][at->second] = r.label;
  }
  return t;
}

std::optional<std::size_t> AgreementTable::annotator_index(std::string_view id) const {
  for (std::size_t i = 0; i < annotators.size(); ++i) {
    if (annotators[i] == id) return i;
  }
  return std::nullopt;
}

std::pair<std::vector<std::string>, std::vector<std::string>> AgreementTable::aligned(std::size_t a,
                                                                                      std::size_t b) const {
  std::pair<std::vector<std::string>, std::vector<std::string>> out;
  for (const auto& row : labels) {
    if (a < row.size() && b < row.size() && row[a] && row[b]) {
      out.first.push_back(*row[a]);
      out.second.push_back(*row[b]);
    }
  }
  return out;
}

std::size_t AgreementTable::pairable_values() const {
  std::size_t n = 0;
  for (const auto& row : labels) {
    std::size_t m = 0;
    for (const auto& v : row) m += v.has_value();
    if (m >= 2) n += m;
  }
  return n;
}

double krippendorff_alpha(const AgreementTable& table) {
  // Coincidence matrix o[c][k] over pairable values.
  std::map<std::string, std::size_t> idx;
  for (const auto& row : table.labels) {
    for (const auto& v : row) {
      if (v) idx.emplace(*v, 0);
    }
  }
  std::size_t next = 0;
  for (auto& [label, i] : idx) i = next++;
  const auto k = idx.size();
  std::vector<std::vector<double>> o(k, std::vector<double>(k, 0.0));
  double n = 0.0;
  for (const auto& row : table.labels) {
    std::vector<std::size_t> values;
    for (const auto& v : row) {
      if (v) values.push_back(idx.at(*v));
    }
    const auto m = values.size();
    if (m < 2) continue;
    n += static_cast<double>(m);
    const double w = 1.0 / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j) o[values[i]][values[j]] += w;
      }
    }
  }
  if (n < 2.0) throw MetricError(MetricErrc::kDegenerateTable, "fewer than 2 pairable values");
  std::vector<double> marg(k, 0.0);
  double observed = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      marg[c] += o[c][d];
      if (c != d) observed += o[c][d];
    }
  }
  double expected = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      if (c != d) expected += marg[c] * marg[d];
    }
  }
  if (expected == 0.0) {
    if (observed == 0.0) return 1.0;
    throw MetricError(MetricErrc::kDegenerateTable, "no expected disagreement");
  }
  return 1.0 - (n - 1.0) * observed / expected;
}

namespace {

void check_pair(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) {
    throw MetricError(MetricErrc::kLengthMismatch, fmt::format("{} vs {} labels", a.size(), b.size()));
  }
  if (a.empty()) throw MetricError(MetricErrc::kEmptyInput, "no aligned items");
}

}  // namespace

double agreement_rate(std::span<const std::string> a, std::span<const std::string> b) {
  check_pair(a, b);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  const double po = agreement_rate(a, b);
  std::map<std::string_view, std::pair<double, double>> marg;
  for (std::size_t i = 0; i < a.size(); ++i) {
    marg[a[i]].first += 1.0;
    marg[b[i]].second += 1.0;
  }
  const double n = static_cast<double>(a.size());
  double pe = 0.0;
  for (const auto& [label, m] : marg) pe += (m.first / n) * (m.second / n);
  if (pe >= 1.0) {
    if (po >= 1.0) return 1.0;
    throw MetricError(MetricErrc::kDegenerateMarginals, "chance agreement is 1");
  }
  return (po - pe) / (1.0 - pe);
}

double gwet_ac1(std::span<const std::string> a, std::span<const std::string> b,
                std::span<const std::string> classes) {
  check_pair(a, b);
  std::set<std::string_view> vocab(classes.begin(), classes.end());
  const auto k = vocab.size();
  if (k < 2) throw MetricError(MetricErrc::kSingleClassVocabulary, fmt::format("K = {}", k));
  std::map<std::string_view, double> counts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto* label : {&a[i], &b[i]}) {
      if (!vocab.count(*label)) throw MetricError(MetricErrc::kUnknownClassInGold, "'" + *label + "'");
      counts[*label] += 1.0;
    }
  }
  const double total = 2.0 * static_cast<double>(a.size());
  double pe = 0.0;
  for (const auto& [label, c] : counts) {
    const double pi = c / total;
    pe += pi * (1.0 - pi);
  }
  pe /= static_cast<double>(k - 1);
  const double po = agreement_rate(a, b);
  return (po - pe) / (1.0 - pe);
}

ReferenceAgreement agreement_with_reference(const AgreementTable& table, std::string_view reference,
                                            std::span<const std::string> classes) {
  const auto ref = table.annotator_index(reference);
  if (!ref) throw MetricError(MetricErrc::kEmptyInput, "reference annotator '" + std::string(reference) + "' absent");
  ReferenceAgreement out;
  out.reference = std::string(reference);
  for (std::size_t i = 0; i < table.annotators.size(); ++i) {
    if (i == *ref) continue;
    auto [r, o] = table.aligned(*ref, i);
    if (r.empty()) continue;
    PairAgreement p;
    p.annotator = table.annotators[i];
    p.items = r.size();
    p.rate = agreement_rate(r, o);
    p.kappa = cohen_kappa(r, o);
    p.ac1 = gwet_ac1(r, o, classes);
    out.pairs.push_back(p);
  }
  if (out.pairs.empty()) throw MetricError(MetricErrc::kEmptyInput, "no items shared with the reference");
  for (const auto& p : out.pairs) {
    out.mean_rate += p.rate;
    out.mean_kappa += p.kappa;
    out.mean_ac1 += p.ac1;
  }
  const double n = static_cast<double>(out.pairs.size());
  out.mean_rate /= n;
  out.mean_kappa /= n;
  out.mean_ac1 /= n;
  return out;
}

}  // namespace narrframe::metrics
