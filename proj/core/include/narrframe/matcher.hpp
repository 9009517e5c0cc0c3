#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "narrframe/catalog.hpp"
#include "narrframe/corpus.hpp"
#include "narrframe/error.hpp"
#include "narrframe/structure.hpp"

namespace narrframe {

// How one slot of a structure related to a candidate frame.
enum class SlotMatch {
  kSatisfied,  // value in the admissible set, or scalar equal
  kAny,        // optional role slot, accepts anything
  kPartial,    // scalar absent in a predicted structure; not counted
};

std::string_view to_string(SlotMatch m);

struct Candidate {
  std::string frame_id;
  std::size_t catalog_index = 0;
  int specificity = 0;
  std::array<SlotMatch, 6> slot_trace{};  // indexed like kAllSlots

  bool operator==(const Candidate&) const = default;
};

enum class Verdict { kUnique, kTied, kNoMatch };
std::string_view to_string(Verdict v);

struct MatchResult {
  // Sorted by specificity descending, then catalog order.
  std::vector<Candidate> candidates;
  Verdict verdict = Verdict::kNoMatch;
  // Some scalar slot was absent and matched as a wildcard.
  bool partial = false;

  const Candidate* best() const { return candidates.empty() ? nullptr : &candidates.front(); }
  bool operator==(const MatchResult&) const = default;
};

// Gold matching requires all six slots; predicted matching treats absent
// focus/conflict/story as wildcards that add no specificity.
enum class MatchMode { kGold, kPredicted };

// Compiled form of a catalog: per-slot-value bitsets of compatible frames.
class Matcher {
 public:
  explicit Matcher(const Catalog& catalog);

  MatchResult match(const NarrativeStructure& s, MatchMode mode = MatchMode::kPredicted) const;
  const Catalog& catalog() const { return *catalog_; }

 private:
  using Mask = std::vector<std::uint64_t>;

  const Mask& role_mask(std::size_t role, const Stakeholder& value) const;

  const Catalog* catalog_;
  std::size_t words_ = 0;
  Mask all_;
  // [role][taxonomy index, then NONE, then out-of-taxonomy]
  std::array<std::vector<Mask>, 3> role_masks_;
  std::array<Mask, 3> focus_masks_;
  std::array<Mask, 4> conflict_masks_;
  std::array<Mask, 4> story_masks_;
  std::vector<int> mandatory_roles_;
};

MatchResult match_structure(const NarrativeStructure& s, const Catalog& catalog,
                            MatchMode mode = MatchMode::kPredicted);

// Fixes some slots of the enumerated space; unset slots range over their full vocabulary.
struct SlotRestriction {
  std::optional<Stakeholder> hero;
  std::optional<Stakeholder> villain;
  std::optional<Stakeholder> victim;
  std::optional<Focus> focus;
  std::optional<ConflictStance> conflict;
  std::optional<CulturalStory> story;
};

struct EnumerationOptions {
  std::size_t max_structures = 10'000'000;
  bool keep_table = true;
};

struct EnumerationReport {
  std::size_t structures = 0;
  std::size_t unique = 0;
  std::size_t tied = 0;
  std::size_t no_match = 0;
  // Structures whose unique verdict names each frame, in catalog order.
  std::vector<std::size_t> unique_per_frame;
  // Frame-id sets that tie at top specificity, with how often each occurs.
  std::vector<std::pair<std::vector<std::string>, std::size_t>> tied_groups;
  std::vector<std::pair<NarrativeStructure, MatchResult>> table;
};

// Size of the space: (|taxonomy|+1)^3 * 3 * 4 * 4 before restriction.
std::size_t structure_space_size(const Catalog& catalog, const SlotRestriction& restrict = {});

// Exhaustively matches every fully specified structure. Throws SpaceTooLarge.
EnumerationReport enumerate_matches(const Catalog& catalog, const SlotRestriction& restrict = {},
                                    const EnumerationOptions& options = {});

class SpaceTooLarge : public Error {
 public:
  SpaceTooLarge(std::size_t size, std::size_t bound);
};

// Majority vote over annotators for one slot of one article.
struct Adjudication {
  std::string label;
  std::size_t support = 0;
  bool tie = false;
  std::vector<std::string> tied_labels;  // sorted; empty unless tie
  // False only for ties without a usable expert label; `label` then holds the
  // lexicographically first tied label.
  bool resolved = true;
};

// Throws Error on empty input or mixed article_id/slot.
Adjudication adjudicate(std::span<const AnnotationRecord> records, Slot slot,
                        std::optional<std::string_view> expert_annotator = std::nullopt);

}  // namespace narrframe
