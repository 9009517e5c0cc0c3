#include "narrframe/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "narrframe/error.hpp"
#include "narrframe/labels.hpp"
#include "narrframe/resources.hpp"
#include "narrframe/text.hpp"

namespace narrframe {

bool RoleConstraint::admits(const Stakeholder& s) const {
  if (any) return true;
  if (s.is_none()) return false;
  return std::find(admissible.begin(), admissible.end(), s.label()) != admissible.end();
}

const RoleConstraint& FrameSignature::role(Slot s) const {
  switch (s) {
    case Slot::kHero: return hero;
    case Slot::kVillain: return villain;
    case Slot::kVictim: return victim;
    default: break;
  }
  throw Error("slot is not a character role: " + std::string(to_string(s)));
}

RoleConstraint& FrameSignature::role(Slot s) {
  return const_cast<RoleConstraint&>(std::as_const(*this).role(s));
}

int FrameSignature::mandatory_role_count() const {
  return static_cast<int>(!hero.any) + static_cast<int>(!villain.any) + static_cast<int>(!victim.any);
}

Catalog::Catalog(Taxonomy taxonomy, std::vector<FrameSignature> frames)
    : taxonomy_(std::move(taxonomy)), frames_(std::move(frames)) {}

const FrameSignature* Catalog::find(std::string_view frame_id) const {
  auto i = index_of(frame_id);
  return i ? &frames_[*i] : nullptr;
}

std::optional<std::size_t> Catalog::index_of(std::string_view frame_id) const {
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    if (frames_[i].frame_id == frame_id) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Catalog::frame_ids() const {
  std::vector<std::string> out;
  out.reserve(frames_.size());
  for (const auto& f : frames_) out.push_back(f.frame_id);
  return out;
}

std::string_view to_string(CatalogViolationKind k) {
  switch (k) {
    case CatalogViolationKind::kDuplicateFrameId: return "DuplicateFrameId";
    case CatalogViolationKind::kUnknownTaxonomyMember: return "UnknownTaxonomyMember";
    case CatalogViolationKind::kEmptyAdmissibleSet: return "EmptyAdmissibleSet";
    case CatalogViolationKind::kNoneInAdmissibleSet: return "NoneInAdmissibleSet";
    case CatalogViolationKind::kDuplicateSignature: return "DuplicateSignature";
    case CatalogViolationKind::kNoMandatoryCharacter: return "NoMandatoryCharacter";
  }
  return "?";
}

std::string CatalogViolation::describe() const {
  std::string out(to_string(kind));
  out += "(" + frame;
  if (!other.empty()) out += ", " + other;
  out += ")";
  if (!detail.empty()) out += ": " + detail;
  return out;
}

namespace {

using SignatureKey = std::tuple<std::vector<std::string>, std::vector<std::string>,
                                std::vector<std::string>, Focus, ConflictStance, CulturalStory>;

std::vector<std::string> role_key(const RoleConstraint& r) {
  if (r.any) return {"*ANY*"};
  std::vector<std::string> v = r.admissible;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<CatalogViolation> validate_catalog(const Catalog& catalog) {
  using K = CatalogViolationKind;
  std::vector<CatalogViolation> out;
  std::map<std::string, std::string> ids;
  std::map<SignatureKey, std::string> signatures;
  for (const auto& f : catalog.frames()) {
    if (auto [it, fresh] = ids.emplace(f.frame_id, f.frame_id); !fresh) {
      out.push_back({K::kDuplicateFrameId, f.frame_id, it->second, ""});
    }
    for (auto slot : kRoleSlots) {
      const auto& r = f.role(slot);
      if (r.any) continue;
      const auto slot_name = std::string(to_string(slot));
      if (r.admissible.empty()) out.push_back({K::kEmptyAdmissibleSet, f.frame_id, "", slot_name});
      for (const auto& label : r.admissible) {
        if (is_none_token(label)) {
          out.push_back({K::kNoneInAdmissibleSet, f.frame_id, "", slot_name});
        } else if (!catalog.taxonomy().contains(label)) {
          out.push_back({K::kUnknownTaxonomyMember, f.frame_id, "", slot_name + "=" + label});
        }
      }
    }
    if (f.mandatory_role_count() == 0) out.push_back({K::kNoMandatoryCharacter, f.frame_id, "", ""});
    SignatureKey key{role_key(f.hero), role_key(f.villain), role_key(f.victim),
                     f.focus,          f.conflict,          f.story};
    if (auto [it, fresh] = signatures.emplace(std::move(key), f.frame_id); !fresh) {
      out.push_back({K::kDuplicateSignature, it->second, f.frame_id, ""});
    }
  }
  return out;
}

namespace {

RoleConstraint parse_role(std::string_view value, const Taxonomy& taxonomy) {
  const auto v = text::trim(value);
  if (text::iequals(v, "ANY")) return RoleConstraint::any_value();
  RoleConstraint r{false, {}};
  for (const auto& part : text::split(v, ',')) {
    const auto p = text::trim(part);
    if (p.empty()) continue;
    // Unknown members are kept verbatim so validation can report them.
    if (auto label = taxonomy.resolve(p)) {
      r.admissible.emplace_back(*label);
    } else if (is_none_token(p)) {
      r.admissible.emplace_back(kNoneLabel);
    } else {
      r.admissible.emplace_back(p);
    }
  }
  return r;
}

struct Block {
  std::size_t line = 0;
  std::map<std::string, std::string> fields;
};

}  // namespace

Catalog parse_catalog(std::string_view text, const Taxonomy& taxonomy, std::string_view source) {
  static const std::set<std::string> kKnownKeys{"frame",    "display_name", "hero",   "villain",
                                                "victim",   "conflict",     "story",  "description",
                                                "source",   "prompt",       "structure", "focus"};
  const std::string src(source);
  std::optional<Focus> section;
  std::vector<std::pair<Block, std::optional<Focus>>> blocks;
  std::size_t lineno = 0;
  for (auto raw : text::lines(text)) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '@') {
      const auto sp = line.find_first_of(" \t");
      const auto key = line.substr(1, sp == std::string_view::npos ? std::string_view::npos : sp - 1);
      const auto value = sp == std::string_view::npos ? std::string_view{} : text::trim(line.substr(sp));
      if (key != "taxonomy") throw ParseError(src, lineno, "unknown directive @" + std::string(key));
      if (value != taxonomy.name()) {
        throw ParseError(src, lineno,
                         "catalog expects taxonomy '" + std::string(value) + "', got '" +
                             taxonomy.name() + "'");
      }
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(src, lineno, "unterminated section header");
      const auto name = text::canonical_token(line.substr(1, line.size() - 2));
      section = focus_from_token(name);
      if (!section) throw ParseError(src, lineno, "unknown section [" + name + "]");
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(src, lineno, "expected 'key: value'");
    const auto key = text::to_lower(text::trim(line.substr(0, colon)));
    const auto value = std::string(text::trim(line.substr(colon + 1)));
    if (!kKnownKeys.count(key)) throw ParseError(src, lineno, "unknown key '" + key + "'");
    if (key == "frame") {
      blocks.push_back({Block{lineno, {}}, section});
    } else if (blocks.empty()) {
      throw ParseError(src, lineno, "'" + key + "' before the first 'frame:' line");
    }
    auto& fields = blocks.back().first.fields;
    if (!fields.emplace(key, value).second) throw ParseError(src, lineno, "duplicate key '" + key + "'");
  }

  std::vector<FrameSignature> frames;
  for (auto& [block, focus] : blocks) {
    auto& f = block.fields;
    auto require = [&](const char* key) -> const std::string& {
      auto it = f.find(key);
      if (it == f.end() || it->second.empty()) {
        throw ParseError(src, block.line, std::string("frame block missing '") + key + "'");
      }
      return it->second;
    };
    auto optional = [&](const char* key) {
      auto it = f.find(key);
      return it == f.end() ? std::string() : it->second;
    };
    FrameSignature sig;
    sig.frame_id = text::upper_snake(require("frame"));
    sig.display_name = optional("display_name");
    if (sig.display_name.empty()) sig.display_name = sig.frame_id;
    sig.hero = parse_role(require("hero"), taxonomy);
    sig.villain = parse_role(require("villain"), taxonomy);
    sig.victim = parse_role(require("victim"), taxonomy);
    if (f.count("focus")) {
      auto parsed = focus_from_token(text::canonical_token(f["focus"]));
      if (!parsed) throw ParseError(src, block.line, "unknown focus '" + f["focus"] + "'");
      if (focus && *focus != *parsed) throw ParseError(src, block.line, "focus contradicts section header");
      focus = parsed;
    }
    if (!focus) throw ParseError(src, block.line, "frame outside a [HERO]/[VILLAIN]/[VICTIM] section");
    sig.focus = *focus;
    auto conflict = conflict_from_token(text::canonical_token(require("conflict")));
    if (!conflict) throw ParseError(src, block.line, "unknown conflict '" + f["conflict"] + "'");
    sig.conflict = *conflict;
    auto story = story_from_token(text::canonical_token(require("story")));
    if (!story) throw ParseError(src, block.line, "unknown story '" + f["story"] + "'");
    sig.story = *story;
    sig.description = optional("description");
    sig.source = optional("source");
    sig.prompt_description = optional("prompt");
    if (sig.prompt_description.empty()) sig.prompt_description = sig.description;
    sig.structure_hint = optional("structure");
    frames.push_back(std::move(sig));
  }
  return Catalog(taxonomy, std::move(frames));
}

Catalog load_catalog(std::string_view text, const Taxonomy& taxonomy, std::string_view source) {
  auto catalog = parse_catalog(text, taxonomy, source);
  auto violations = validate_catalog(catalog);
  if (!violations.empty()) {
    std::vector<std::string> msgs;
    for (const auto& v : violations) msgs.push_back(v.describe());
    throw ValidationError("catalog " + std::string(source), std::move(msgs));
  }
  return catalog;
}

Catalog load_catalog_file(const std::filesystem::path& path, const Taxonomy& taxonomy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open catalog " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_catalog(ss.str(), taxonomy, path.string());
}

std::string render_catalog(const Catalog& catalog) {
  std::string out = "@taxonomy " + catalog.taxonomy().name() + "\n";
  std::optional<Focus> section;
  auto role = [](const RoleConstraint& r) {
    return r.any ? std::string("ANY") : text::join(r.admissible, ", ");
  };
  for (const auto& f : catalog.frames()) {
    if (section != f.focus) {
      section = f.focus;
      out += "\n[" + std::string(to_string(f.focus)) + "]\n";
    }
    out += "\nframe: " + f.frame_id + "\n";
    out += "display_name: " + f.display_name + "\n";
    out += "hero: " + role(f.hero) + "\n";
    out += "villain: " + role(f.villain) + "\n";
    out += "victim: " + role(f.victim) + "\n";
    out += "conflict: " + std::string(to_string(f.conflict)) + "\n";
    out += "story: " + std::string(to_string(f.story)) + "\n";
    if (!f.description.empty()) out += "description: " + f.description + "\n";
    if (!f.source.empty()) out += "source: " + f.source + "\n";
    if (!f.prompt_description.empty()) out += "prompt: " + f.prompt_description + "\n";
    if (!f.structure_hint.empty()) out += "structure: " + f.structure_hint + "\n";
  }
  return out;
}

Catalog climate_catalog() {
  static const Catalog kClimate = [] {
    const auto text = resources::find("catalogs/climate.catalog");
    if (!text) throw Error("missing built-in resource catalogs/climate.catalog");
    return load_catalog(*text, climate_taxonomy(), "catalogs/climate.catalog");
  }();
  return kClimate;
}

}  // namespace narrframe
