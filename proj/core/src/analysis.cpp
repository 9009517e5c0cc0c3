#include "narrframe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "narrframe/labels.hpp"

namespace narrframe::analysis {

LabelMap gold_labels(std::span<const ArticleRecord> corpus, std::optional<Slot> slot) {
  LabelMap out;
  for (const auto& a : corpus) {
    if (!slot) {
      if (a.gold_narrative) out.emplace(a.id, *a.gold_narrative);
      continue;
    }
    if (!a.gold) continue;
    auto label = slot_label(*a.gold, *slot);
    if (!label.empty()) out.emplace(a.id, std::move(label));
  }
  return out;
}

std::vector<std::string> class_order(std::optional<Slot> slot, const Taxonomy& taxonomy, const Catalog* catalog) {
  std::vector<std::string> out;
  if (!slot) {
    if (!catalog) throw Error("narrative class order needs a catalog");
    return catalog->frame_ids();
  }
  switch (*slot) {
    case Slot::kHero:
    case Slot::kVillain:
    case Slot::kVictim:
      out = taxonomy.labels();
      out.emplace_back(kNoneLabel);
      break;
    case Slot::kFocus:
      for (auto v : kAllFocus) out.emplace_back(to_string(v));
      break;
    case Slot::kConflict:
      for (auto v : kAllConflicts) out.emplace_back(to_string(v));
      break;
    case Slot::kStory:
      for (auto v : kAllStories) out.emplace_back(to_string(v));
      break;
  }
  return out;
}

NoLabels::NoLabels() : Error("NoLabels: no article in the corpus carries a label for this slot") {}

UnknownMetadataField::UnknownMetadataField(std::string_view field)
    : Error("UnknownMetadataField: no article carries '" + std::string(field) + "'") {}

NoGenericFrames::NoGenericFrames() : Error("NoGenericFrames: no article carries generic frame metadata") {}

namespace {

// `classes` followed by any further labels seen, sorted.
std::vector<std::string> full_order(std::span<const std::string> classes, std::span<const ArticleRecord> corpus,
                                    const LabelMap& labels) {
  std::vector<std::string> out(classes.begin(), classes.end());
  std::set<std::string> known(classes.begin(), classes.end());
  std::set<std::string> extra;
  for (const auto& a : corpus) {
    auto it = labels.find(a.id);
    if (it != labels.end() && !known.count(it->second)) extra.insert(it->second);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::size_t index_in(const std::vector<std::string>& v, const std::string& s) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
}

std::optional<std::string> metadata_value(const ArticleRecord& a, MetadataField f) {
  switch (f) {
    case MetadataField::kLeaning:
      if (a.leaning) return std::string(to_string(*a.leaning));
      return std::nullopt;
    case MetadataField::kYear:
      if (a.year) return std::to_string(*a.year);
      return std::nullopt;
    case MetadataField::kOutlet:
      if (!a.outlet.empty()) return a.outlet;
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

FrequencyTable distribution(std::span<const ArticleRecord> corpus, const LabelMap& labels,
                            std::span<const std::string> classes) {
  FrequencyTable t;
  t.classes = full_order(classes, corpus, labels);
  t.counts.assign(t.classes.size(), 0);
  for (const auto& a : corpus) {
    auto it = labels.find(a.id);
    if (it == labels.end()) {
      ++t.unlabeled;
      continue;
    }
    ++t.counts[index_in(t.classes, it->second)];
    ++t.total;
  }
  if (t.total == 0) throw NoLabels();
  for (auto c : t.counts) t.proportions.push_back(static_cast<double>(c) / static_cast<double>(t.total));
  return t;
}

std::optional<MetadataField> metadata_field_from_string(std::string_view s) {
  for (auto f : {MetadataField::kLeaning, MetadataField::kYear, MetadataField::kOutlet}) {
    if (s == to_string(f)) return f;
  }
  return std::nullopt;
}

std::string_view to_string(MetadataField f) {
  switch (f) {
    case MetadataField::kLeaning: return "leaning";
    case MetadataField::kYear: return "year";
    case MetadataField::kOutlet: return "outlet";
  }
  return "?";
}

namespace {
std::vector<std::vector<double>> shares(const std::vector<std::vector<std::size_t>>& counts,
                                        auto denominator) {
  std::vector<std::vector<double>> out(counts.size());
  for (std::size_t r = 0; r < counts.size(); ++r) {
    for (std::size_t c = 0; c < counts[r].size(); ++c) {
      const auto d = denominator(r, c);
      out[r].push_back(d ? static_cast<double>(counts[r][c]) / static_cast<double>(d) : 0.0);
    }
  }
  return out;
}
}  // namespace

std::vector<std::vector<double>> ContingencyTable::row_shares() const {
  return shares(counts, [&](std::size_t r, std::size_t) { return row_totals[r]; });
}

std::vector<std::vector<double>> ContingencyTable::column_shares() const {
  return shares(counts, [&](std::size_t, std::size_t c) { return column_totals[c]; });
}

std::vector<std::vector<double>> ContingencyTable::global_shares() const {
  return shares(counts, [&](std::size_t, std::size_t) { return total; });
}

ContingencyTable crosstab(std::span<const ArticleRecord> corpus, const LabelMap& labels,
                          std::span<const std::string> classes, MetadataField field) {
  ContingencyTable t;
  std::vector<std::string> values;
  for (const auto& a : corpus) {
    if (auto v = metadata_value(a, field)) values.push_back(*v);
  }
  if (values.empty()) throw UnknownMetadataField(to_string(field));
  if (field == MetadataField::kLeaning) {
    for (auto l : kAllLeanings) {
      const std::string name(to_string(l));
      if (std::find(values.begin(), values.end(), name) != values.end()) t.columns.push_back(name);
    }
  } else {
    std::set<std::string> uniq(values.begin(), values.end());
    t.columns.assign(uniq.begin(), uniq.end());
    if (field == MetadataField::kYear) {
      std::sort(t.columns.begin(), t.columns.end(),
                [](const std::string& a, const std::string& b) { return std::stoi(a) < std::stoi(b); });
    }
  }

  t.rows = full_order(classes, corpus, labels);
  t.counts.assign(t.rows.size(), std::vector<std::size_t>(t.columns.size(), 0));
  t.row_totals.assign(t.rows.size(), 0);
  t.column_totals.assign(t.columns.size(), 0);
  t.excluded_per_row.assign(t.rows.size(), 0);
  std::size_t labelled = 0;
  for (const auto& a : corpus) {
    auto it = labels.find(a.id);
    if (it == labels.end()) continue;
    ++labelled;
    const auto r = index_in(t.rows, it->second);
    auto v = metadata_value(a, field);
    if (!v) {
      ++t.excluded_per_row[r];
      ++t.excluded;
      continue;
    }
    const auto c = index_in(t.columns, *v);
    ++t.counts[r][c];
    ++t.row_totals[r];
    ++t.column_totals[c];
    ++t.total;
  }
  if (labelled == 0) throw NoLabels();
  return t;
}

IntersectionTable frame_intersection(std::span<const ArticleRecord> corpus, const LabelMap& narratives,
                                     std::span<const std::string> narrative_order) {
  const bool any = std::any_of(corpus.begin(), corpus.end(),
                               [](const ArticleRecord& a) { return a.generic_frames.has_value(); });
  if (!any) throw NoGenericFrames();
  IntersectionTable t;
  t.narratives = full_order(narrative_order, corpus, narratives);
  for (auto g : kAllGenericFrames) t.generic_frames.emplace_back(to_string(g));
  t.counts.assign(t.narratives.size(), std::vector<std::size_t>(t.generic_frames.size(), 0));
  for (const auto& a : corpus) {
    auto it = narratives.find(a.id);
    if (it == narratives.end() || !a.generic_frames || a.generic_frames->empty()) {
      ++t.skipped;
      continue;
    }
    const auto r = index_in(t.narratives, it->second);
    for (auto g : *a.generic_frames) {
      ++t.counts[r][static_cast<std::size_t>(g)];
      ++t.total;
    }
  }
  for (const auto& row : t.counts) {
    double n = 0;
    for (auto c : row) n += static_cast<double>(c);
    double h = 0.0;
    for (auto c : row) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / n;
      h -= p * std::log2(p);
    }
    t.entropy.push_back(h);
  }
  return t;
}

}  // namespace narrframe::analysis
