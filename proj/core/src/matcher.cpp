#include "narrframe/matcher.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <fmt/format.h>

namespace narrframe {

std::string_view to_string(SlotMatch m) {
  switch (m) {
    case SlotMatch::kSatisfied: return "MATCH";
    case SlotMatch::kAny: return "ANY";
    case SlotMatch::kPartial: return "PARTIAL";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kUnique: return "UNIQUE";
    case Verdict::kTied: return "TIED";
    case Verdict::kNoMatch: return "NO_MATCH";
  }
  return "?";
}

Matcher::Matcher(const Catalog& catalog) : catalog_(&catalog) {
  const auto n = catalog.size();
  words_ = (n + 63) / 64;
  const Mask empty(words_, 0);
  all_ = empty;
  const auto& tax = catalog.taxonomy();
  for (auto& masks : role_masks_) masks.assign(tax.size() + 2, empty);
  focus_masks_.fill(empty);
  conflict_masks_.fill(empty);
  story_masks_.fill(empty);
  mandatory_roles_.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = catalog.frames()[i];
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    const auto w = i / 64;
    all_[w] |= bit;
    for (std::size_t r = 0; r < 3; ++r) {
      const auto& rc = f.role(kRoleSlots[r]);
      auto& masks = role_masks_[r];
      if (rc.any) {
        for (auto& m : masks) m[w] |= bit;
        continue;
      }
      for (const auto& label : rc.admissible) {
        if (auto idx = tax.index_of(label)) masks[*idx][w] |= bit;
      }
    }
    focus_masks_[static_cast<std::size_t>(f.focus)][w] |= bit;
    conflict_masks_[static_cast<std::size_t>(f.conflict)][w] |= bit;
    story_masks_[static_cast<std::size_t>(f.story)][w] |= bit;
    mandatory_roles_[i] = f.mandatory_role_count();
  }
}

const Matcher::Mask& Matcher::role_mask(std::size_t role, const Stakeholder& value) const {
  const auto& masks = role_masks_[role];
  const auto& tax = catalog_->taxonomy();
  if (value.is_none()) return masks[tax.size()];
  if (auto idx = tax.index_of(value.label())) return masks[*idx];
  return masks[tax.size() + 1];
}

MatchResult Matcher::match(const NarrativeStructure& s, MatchMode mode) const {
  MatchResult result;
  const bool gold = mode == MatchMode::kGold;
  if (gold && !s.complete()) return result;

  Mask live = all_;
  auto narrow = [&](const Mask& m) {
    for (std::size_t w = 0; w < words_; ++w) live[w] &= m[w];
  };
  for (std::size_t r = 0; r < 3; ++r) narrow(role_mask(r, s.role(kRoleSlots[r])));
  if (s.focus) narrow(focus_masks_[static_cast<std::size_t>(*s.focus)]);
  if (s.conflict) narrow(conflict_masks_[static_cast<std::size_t>(*s.conflict)]);
  if (s.story) narrow(story_masks_[static_cast<std::size_t>(*s.story)]);

  const int present_scalars = int{s.focus.has_value()} + int{s.conflict.has_value()} +
                              int{s.story.has_value()};
  result.partial = present_scalars < 3;

  for (std::size_t w = 0; w < words_; ++w) {
    for (auto bits = live[w]; bits != 0; bits &= bits - 1) {
      const auto i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      const auto& f = catalog_->frames()[i];
      Candidate c;
      c.frame_id = f.frame_id;
      c.catalog_index = i;
      c.specificity = mandatory_roles_[i] + present_scalars;
      for (std::size_t r = 0; r < 3; ++r) {
        c.slot_trace[r] = f.role(kRoleSlots[r]).any ? SlotMatch::kAny : SlotMatch::kSatisfied;
      }
      c.slot_trace[3] = s.focus ? SlotMatch::kSatisfied : SlotMatch::kPartial;
      c.slot_trace[4] = s.conflict ? SlotMatch::kSatisfied : SlotMatch::kPartial;
      c.slot_trace[5] = s.story ? SlotMatch::kSatisfied : SlotMatch::kPartial;
      result.candidates.push_back(std::move(c));
    }
  }
  // Bits are visited in catalog order, so a stable sort keeps it as the tie-break.
  std::stable_sort(result.candidates.begin(), result.candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.specificity > b.specificity; });

  if (result.candidates.empty()) {
    result.verdict = Verdict::kNoMatch;
  } else if (result.candidates.size() > 1 &&
             result.candidates[1].specificity == result.candidates[0].specificity) {
    result.verdict = Verdict::kTied;
  } else {
    result.verdict = Verdict::kUnique;
  }
  return result;
}

MatchResult match_structure(const NarrativeStructure& s, const Catalog& catalog, MatchMode mode) {
  return Matcher(catalog).match(s, mode);
}

SpaceTooLarge::SpaceTooLarge(std::size_t size, std::size_t bound)
    : Error(fmt::format("structure space of {} exceeds the enumeration bound {}", size, bound)) {}

namespace {

template <typename T, typename All>
std::vector<T> values_for(const std::optional<T>& fixed, const All& all) {
  if (fixed) return {*fixed};
  return {all.begin(), all.end()};
}

std::vector<Stakeholder> roles_for(const std::optional<Stakeholder>& fixed, const Taxonomy& tax) {
  if (fixed) return {*fixed};
  std::vector<Stakeholder> out;
  out.reserve(tax.size() + 1);
  for (const auto& c : tax.classes()) out.emplace_back(c.label);
  out.push_back(Stakeholder::none());
  return out;
}

}  // namespace

std::size_t structure_space_size(const Catalog& catalog, const SlotRestriction& r) {
  const std::size_t roles = catalog.taxonomy().size() + 1;
  auto pick = [](bool fixed, std::size_t full) -> std::size_t { return fixed ? 1 : full; };
  return pick(r.hero.has_value(), roles) * pick(r.villain.has_value(), roles) *
         pick(r.victim.has_value(), roles) * pick(r.focus.has_value(), kAllFocus.size()) *
         pick(r.conflict.has_value(), kAllConflicts.size()) *
         pick(r.story.has_value(), kAllStories.size());
}

EnumerationReport enumerate_matches(const Catalog& catalog, const SlotRestriction& r,
                                    const EnumerationOptions& options) {
  const auto size = structure_space_size(catalog, r);
  if (size > options.max_structures) throw SpaceTooLarge(size, options.max_structures);

  const Matcher matcher(catalog);
  const auto& tax = catalog.taxonomy();
  EnumerationReport report;
  report.unique_per_frame.assign(catalog.size(), 0);
  if (options.keep_table) report.table.reserve(size);
  std::map<std::vector<std::string>, std::size_t> ties;

  const auto heroes = roles_for(r.hero, tax);
  const auto villains = roles_for(r.villain, tax);
  const auto victims = roles_for(r.victim, tax);
  const auto foci = values_for(r.focus, kAllFocus);
  const auto conflicts = values_for(r.conflict, kAllConflicts);
  const auto stories = values_for(r.story, kAllStories);

  NarrativeStructure s;
  for (const auto& h : heroes) {
    s.hero = h;
    for (const auto& vl : villains) {
      s.villain = vl;
      for (const auto& vc : victims) {
        s.victim = vc;
        for (auto f : foci) {
          s.focus = f;
          for (auto c : conflicts) {
            s.conflict = c;
            for (auto st : stories) {
              s.story = st;
              auto m = matcher.match(s, MatchMode::kGold);
              ++report.structures;
              switch (m.verdict) {
                case Verdict::kUnique:
                  ++report.unique;
                  ++report.unique_per_frame[m.candidates.front().catalog_index];
                  break;
                case Verdict::kTied: {
                  ++report.tied;
                  std::vector<std::string> group;
                  for (const auto& cand : m.candidates) {
                    if (cand.specificity != m.candidates.front().specificity) break;
                    group.push_back(cand.frame_id);
                  }
                  ++ties[std::move(group)];
                  break;
                }
                case Verdict::kNoMatch: ++report.no_match; break;
              }
              if (options.keep_table) report.table.emplace_back(s, std::move(m));
            }
          }
        }
      }
    }
  }
  report.tied_groups.assign(ties.begin(), ties.end());
  return report;
}

}  // namespace narrframe
