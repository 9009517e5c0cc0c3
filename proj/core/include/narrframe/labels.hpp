#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "narrframe/structure.hpp"
#include "narrframe/taxonomy.hpp"
#include "narrframe/vocab.hpp"

namespace narrframe {

using ComponentValue = std::variant<Stakeholder, Focus, ConflictStance, CulturalStory>;

// Canonical value for `raw` in `slot`'s vocabulary. Matching ignores case,
// surrounding whitespace and '-'/' ' vs '_'. Role slots map "None", "null"
// and "" to NONE. Throws UnknownLabel.
ComponentValue parse_label(Slot slot, std::string_view raw, const Taxonomy& taxonomy);

std::string render_label(const ComponentValue& value);

// Writes `value` into the matching field of `s`; `slot` picks the role for stakeholders.
void assign(NarrativeStructure& s, Slot slot, const ComponentValue& value);

// Rendered value of one slot; "NONE" for empty roles, "" for absent scalars.
std::string slot_label(const NarrativeStructure& s, Slot slot);

bool is_none_token(std::string_view raw);

}  // namespace narrframe
