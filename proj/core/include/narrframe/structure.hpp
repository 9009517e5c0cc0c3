#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/vocab.hpp"

namespace narrframe {

// A stakeholder category filling a role, or the NONE sentinel.
class Stakeholder {
 public:
  Stakeholder() = default;
  explicit Stakeholder(std::string label);

  static Stakeholder none() { return Stakeholder{}; }

  bool is_none() const { return label_.empty(); }
  // Empty for NONE.
  const std::string& label() const { return label_; }
  // "NONE" for the sentinel.
  std::string_view render() const;

  auto operator<=>(const Stakeholder&) const = default;

 private:
  std::string label_;
};

inline constexpr std::string_view kNoneLabel = "NONE";

struct NarrativeStructure {
  Stakeholder hero;
  Stakeholder villain;
  Stakeholder victim;
  std::optional<Focus> focus;
  std::optional<ConflictStance> conflict;
  std::optional<CulturalStory> story;

  const Stakeholder& role(Slot s) const;
  Stakeholder& role(Slot s);
  bool has_character() const { return !hero.is_none() || !villain.is_none() || !victim.is_none(); }
  bool complete() const { return focus && conflict && story; }

  bool operator==(const NarrativeStructure&) const = default;
};

// Gold structures come from adjudicated annotation; predicted ones may be degraded.
enum class StructureMode { kGold, kPredicted };

enum class StructureViolation {
  kNoPrototypicalCharacter,  // all three roles NONE
  kFocalRoleEmpty,           // gold only: focus points at a NONE role
  kMissingComponent,         // gold only: focus, conflict or story absent
};

std::string_view to_string(StructureViolation v);

std::vector<StructureViolation> validate_structure(const NarrativeStructure& s,
                                                   StructureMode mode = StructureMode::kPredicted);

// "hero=X villain=Y victim=Z focus=F conflict=C story=S", '-' for absent scalars.
std::string describe(const NarrativeStructure& s);

}  // namespace narrframe
