#include "narrframe/vocab.hpp"

#include "narrframe/text.hpp"

namespace narrframe {

std::string_view to_string(Slot s) {
  switch (s) {
    case Slot::kHero: return "hero";
    case Slot::kVillain: return "villain";
    case Slot::kVictim: return "victim";
    case Slot::kFocus: return "focus";
    case Slot::kConflict: return "conflict";
    case Slot::kStory: return "story";
  }
  return "?";
}

std::string_view to_string(Focus f) {
  switch (f) {
    case Focus::kHero: return "HERO";
    case Focus::kVillain: return "VILLAIN";
    case Focus::kVictim: return "VICTIM";
  }
  return "?";
}

std::string_view to_string(ConflictStance c) {
  switch (c) {
    case ConflictStance::kFuelConflict: return "FUEL_CONFLICT";
    case ConflictStance::kFuelResolution: return "FUEL_RESOLUTION";
    case ConflictStance::kPreventConflict: return "PREVENT_CONFLICT";
    case ConflictStance::kPreventResolution: return "PREVENT_RESOLUTION";
  }
  return "?";
}

std::string_view to_string(CulturalStory s) {
  switch (s) {
    case CulturalStory::kFatalist: return "FATALIST";
    case CulturalStory::kHierarchical: return "HIERARCHICAL";
    case CulturalStory::kIndividualistic: return "INDIVIDUALISTIC";
    case CulturalStory::kEgalitarian: return "EGALITARIAN";
  }
  return "?";
}

std::optional<Slot> slot_from_string(std::string_view s) {
  const auto t = text::canonical_token(s);
  for (auto slot : kAllSlots) {
    if (t == text::to_upper(to_string(slot))) return slot;
  }
  if (t == "CULTURAL_STORY") return Slot::kStory;
  return std::nullopt;
}

namespace {
template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<E, N>& all, std::string_view token) {
  for (auto v : all) {
    if (token == to_string(v)) return v;
  }
  return std::nullopt;
}
}  // namespace

std::optional<Focus> focus_from_token(std::string_view token) { return lookup(kAllFocus, token); }

std::optional<ConflictStance> conflict_from_token(std::string_view token) {
  return lookup(kAllConflicts, token);
}

std::optional<CulturalStory> story_from_token(std::string_view token) {
  if (token == "FATALISTIC") return CulturalStory::kFatalist;
  if (token == "INDIVIDUALIST") return CulturalStory::kIndividualistic;
  return lookup(kAllStories, token);
}

}  // namespace narrframe
