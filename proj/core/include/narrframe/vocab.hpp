#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace narrframe {

// The six component slots of a narrative structure.
enum class Slot { kHero, kVillain, kVictim, kFocus, kConflict, kStory };

inline constexpr std::array<Slot, 6> kAllSlots{Slot::kHero,  Slot::kVillain,  Slot::kVictim,
                                               Slot::kFocus, Slot::kConflict, Slot::kStory};
inline constexpr std::array<Slot, 3> kRoleSlots{Slot::kHero, Slot::kVillain, Slot::kVictim};

constexpr bool is_role(Slot s) {
  return s == Slot::kHero || s == Slot::kVillain || s == Slot::kVictim;
}

// Which role the article centers on: heroic, blaming or victimizing framing.
enum class Focus { kHero, kVillain, kVictim };

enum class ConflictStance { kFuelConflict, kFuelResolution, kPreventConflict, kPreventResolution };

// Grid-group cultural story evoked by the frame.
enum class CulturalStory { kFatalist, kHierarchical, kIndividualistic, kEgalitarian };

inline constexpr std::array<Focus, 3> kAllFocus{Focus::kHero, Focus::kVillain, Focus::kVictim};
inline constexpr std::array<ConflictStance, 4> kAllConflicts{
    ConflictStance::kFuelConflict, ConflictStance::kFuelResolution,
    ConflictStance::kPreventConflict, ConflictStance::kPreventResolution};
inline constexpr std::array<CulturalStory, 4> kAllStories{
    CulturalStory::kFatalist, CulturalStory::kHierarchical, CulturalStory::kIndividualistic,
    CulturalStory::kEgalitarian};

std::string_view to_string(Slot s);        // "hero", "villain", ..., "story"
std::string_view to_string(Focus f);       // "HERO", ...
std::string_view to_string(ConflictStance c);
std::string_view to_string(CulturalStory s);

// Accepts the canonical spellings plus "cultural_story" for kStory; case-insensitive.
std::optional<Slot> slot_from_string(std::string_view s);

// These take an already canonical token (see text::canonical_token).
std::optional<Focus> focus_from_token(std::string_view token);
std::optional<ConflictStance> conflict_from_token(std::string_view token);
std::optional<CulturalStory> story_from_token(std::string_view token);

// Slot that a focus value points at.
constexpr Slot focal_slot(Focus f) {
  switch (f) {
    case Focus::kHero: return Slot::kHero;
    case Focus::kVillain: return Slot::kVillain;
    case Focus::kVictim: return Slot::kVictim;
  }
  return Slot::kHero;
}

}  // namespace narrframe
