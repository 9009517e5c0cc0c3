#include "narrframe/structure.hpp"

#include "narrframe/error.hpp"

namespace narrframe {

Stakeholder::Stakeholder(std::string label) : label_(std::move(label)) {
  if (label_ == kNoneLabel) label_.clear();
}

std::string_view Stakeholder::render() const { return is_none() ? kNoneLabel : std::string_view(label_); }

const Stakeholder& NarrativeStructure::role(Slot s) const {
  switch (s) {
    case Slot::kHero: return hero;
    case Slot::kVillain: return villain;
    case Slot::kVictim: return victim;
    default: break;
  }
  throw Error("slot is not a character role: " + std::string(to_string(s)));
}

Stakeholder& NarrativeStructure::role(Slot s) {
  return const_cast<Stakeholder&>(std::as_const(*this).role(s));
}

std::string_view to_string(StructureViolation v) {
  switch (v) {
    case StructureViolation::kNoPrototypicalCharacter: return "NoPrototypicalCharacter";
    case StructureViolation::kFocalRoleEmpty: return "FocalRoleEmpty";
    case StructureViolation::kMissingComponent: return "MissingComponent";
  }
  return "?";
}

std::vector<StructureViolation> validate_structure(const NarrativeStructure& s, StructureMode mode) {
  std::vector<StructureViolation> out;
  if (!s.has_character()) out.push_back(StructureViolation::kNoPrototypicalCharacter);
  if (mode == StructureMode::kGold) {
    if (s.focus && s.role(focal_slot(*s.focus)).is_none()) {
      out.push_back(StructureViolation::kFocalRoleEmpty);
    }
    if (!s.complete()) out.push_back(StructureViolation::kMissingComponent);
  }
  return out;
}

std::string describe(const NarrativeStructure& s) {
  auto opt = [](const auto& v) { return v ? std::string(to_string(*v)) : std::string("-"); };
  return "hero=" + std::string(s.hero.render()) + " villain=" + std::string(s.villain.render()) +
         " victim=" + std::string(s.victim.render()) + " focus=" + opt(s.focus) +
         " conflict=" + opt(s.conflict) + " story=" + opt(s.story);
}

}  // namespace narrframe
