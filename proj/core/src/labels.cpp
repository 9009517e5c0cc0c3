#include "narrframe/labels.hpp"

#include "narrframe/error.hpp"
#include "narrframe/text.hpp"

namespace narrframe {

bool is_none_token(std::string_view raw) {
  const auto t = text::canonical_token(raw);
  return t.empty() || t == "NONE" || t == "NULL" || t == "N/A" || t == "NA";
}

ComponentValue parse_label(Slot slot, std::string_view raw, const Taxonomy& taxonomy) {
  const auto token = text::canonical_token(raw);
  const auto fail = [&]() -> ComponentValue {
    throw UnknownLabel(std::string(text::trim(raw)), std::string(to_string(slot)));
  };
  switch (slot) {
    case Slot::kHero:
    case Slot::kVillain:
    case Slot::kVictim: {
      if (is_none_token(raw)) return Stakeholder::none();
      if (auto label = taxonomy.resolve(raw)) return Stakeholder(std::string(*label));
      return fail();
    }
    case Slot::kFocus:
      if (auto f = focus_from_token(token)) return *f;
      return fail();
    case Slot::kConflict:
      if (auto c = conflict_from_token(token)) return *c;
      return fail();
    case Slot::kStory:
      if (auto s = story_from_token(token)) return *s;
      return fail();
  }
  return fail();
}

std::string render_label(const ComponentValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Stakeholder>) {
          return std::string(v.render());
        } else {
          return std::string(to_string(v));
        }
      },
      value);
}

void assign(NarrativeStructure& s, Slot slot, const ComponentValue& value) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Stakeholder>) {
          s.role(slot) = v;
        } else if constexpr (std::is_same_v<T, Focus>) {
          s.focus = v;
        } else if constexpr (std::is_same_v<T, ConflictStance>) {
          s.conflict = v;
        } else {
          s.story = v;
        }
      },
      value);
}

std::string slot_label(const NarrativeStructure& s, Slot slot) {
  switch (slot) {
    case Slot::kHero:
    case Slot::kVillain:
    case Slot::kVictim: return std::string(s.role(slot).render());
    case Slot::kFocus: return s.focus ? std::string(to_string(*s.focus)) : std::string();
    case Slot::kConflict: return s.conflict ? std::string(to_string(*s.conflict)) : std::string();
    case Slot::kStory: return s.story ? std::string(to_string(*s.story)) : std::string();
  }
  return {};
}

}  // namespace narrframe
