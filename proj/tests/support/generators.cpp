#include "generators.hpp"

#include <set>

#include "narrframe/matcher.hpp"

namespace narrframe::gen {

std::vector<std::string> letters(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(1, static_cast<char>('A' + i));
  return out;
}

Stakeholder Gen::stakeholder(const Taxonomy& t, double none_rate) {
  if (chance(none_rate)) return Stakeholder::none();
  return Stakeholder(pick(t.labels()));
}

NarrativeStructure Gen::structure(const Taxonomy& t, bool complete) {
  NarrativeStructure s;
  s.hero = stakeholder(t);
  s.villain = stakeholder(t);
  s.victim = stakeholder(t);
  if (complete || !chance(0.3)) s.focus = pick(kAllFocus);
  if (complete || !chance(0.3)) s.conflict = pick(kAllConflicts);
  if (complete || !chance(0.3)) s.story = pick(kAllStories);
  return s;
}

std::vector<std::string> Gen::labels(std::size_t n, std::size_t k) {
  const auto alphabet = letters(k);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(pick(alphabet));
  return out;
}

std::vector<std::vector<std::optional<std::string>>> Gen::rating_table(std::size_t items, std::size_t raters,
                                                                        std::size_t k, double missing_rate) {
  const auto alphabet = letters(k);
  std::vector<std::vector<std::optional<std::string>>> rows(items);
  for (auto& row : rows) {
    // A per-item favourite keeps agreement well above chance.
    const auto& favourite = pick(alphabet);
    for (std::size_t r = 0; r < raters; ++r) {
      if (chance(missing_rate)) {
        row.emplace_back(std::nullopt);
      } else {
        row.emplace_back(chance(0.6) ? favourite : pick(alphabet));
      }
    }
  }
  return rows;
}

std::vector<ArticleRecord> Gen::corpus(std::size_t n, const Catalog& catalog) {
  static const std::vector<std::string> outlets{"Daily Ledger", "Coastal Times", "The Meridian", "Northern Post"};
  std::vector<ArticleRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    ArticleRecord r;
    r.id = "a" + std::to_string(i);
    r.title = "Article " + std::to_string(i);
    r.text = "Body of article " + std::to_string(i) + ".";
    if (chance(0.9)) r.outlet = pick(outlets);
    if (chance(0.85)) r.leaning = pick(kAllLeanings);
    if (chance(0.85)) r.year = 2017 + static_cast<int>(below(6));
    if (chance(0.9)) {
      // Most gold structures are drawn from a frame so narratives are consistent.
      r.gold = structure(catalog.taxonomy());
      const auto m = match_structure(*r.gold, catalog, MatchMode::kGold);
      if (m.verdict == Verdict::kUnique) r.gold_narrative = m.candidates.front().frame_id;
      else if (chance(0.5)) r.gold_narrative = pick(catalog.frames()).frame_id;
    }
    if (chance(0.8)) {
      std::set<GenericFrame> g;
      for (auto f : kAllGenericFrames) {
        if (chance(0.35)) g.insert(f);
      }
      r.generic_frames = std::move(g);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace narrframe::gen
