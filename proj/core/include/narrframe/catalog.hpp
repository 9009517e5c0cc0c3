#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/structure.hpp"
#include "narrframe/taxonomy.hpp"
#include "narrframe/vocab.hpp"

namespace narrframe {

// Admissible values for one role slot of a frame. `any` marks an optional
// slot that accepts every value including NONE; otherwise the slot is
// satisfied by membership in `admissible`.
struct RoleConstraint {
  bool any = true;
  std::vector<std::string> admissible;

  static RoleConstraint any_value() { return {}; }
  static RoleConstraint one_of(std::vector<std::string> labels) { return {false, std::move(labels)}; }

  bool admits(const Stakeholder& s) const;

  bool operator==(const RoleConstraint&) const = default;
};

struct FrameSignature {
  std::string frame_id;
  std::string display_name;
  RoleConstraint hero;
  RoleConstraint villain;
  RoleConstraint victim;
  Focus focus = Focus::kHero;
  ConflictStance conflict = ConflictStance::kFuelResolution;
  CulturalStory story = CulturalStory::kEgalitarian;
  std::string description;
  std::string source;
  // Short description used in the narrative classification prompt.
  std::string prompt_description;
  // Typical roles and focus, appended to the prompt description in structured prompts.
  std::string structure_hint;

  const RoleConstraint& role(Slot s) const;
  RoleConstraint& role(Slot s);
  int mandatory_role_count() const;

  bool operator==(const FrameSignature&) const = default;
};

class Catalog {
 public:
  Catalog(Taxonomy taxonomy, std::vector<FrameSignature> frames);

  const Taxonomy& taxonomy() const { return taxonomy_; }
  const std::vector<FrameSignature>& frames() const { return frames_; }
  std::size_t size() const { return frames_.size(); }

  const FrameSignature* find(std::string_view frame_id) const;
  std::optional<std::size_t> index_of(std::string_view frame_id) const;
  std::vector<std::string> frame_ids() const;

  bool operator==(const Catalog&) const = default;

 private:
  Taxonomy taxonomy_;
  std::vector<FrameSignature> frames_;
};

enum class CatalogViolationKind {
  kDuplicateFrameId,
  kUnknownTaxonomyMember,
  kEmptyAdmissibleSet,
  kNoneInAdmissibleSet,
  kDuplicateSignature,
  kNoMandatoryCharacter,
};

std::string_view to_string(CatalogViolationKind k);

struct CatalogViolation {
  CatalogViolationKind kind;
  std::string frame;
  std::string other;   // second frame for kDuplicateFrameId / kDuplicateSignature
  std::string detail;  // offending label, slot name

  std::string describe() const;
  bool operator==(const CatalogViolation&) const = default;
};

std::vector<CatalogViolation> validate_catalog(const Catalog& catalog);

// Parses the block format documented in data/catalogs/climate.catalog. Throws
// ParseError with line context; does not validate.
Catalog parse_catalog(std::string_view text, const Taxonomy& taxonomy,
                      std::string_view source = "<catalog>");

// parse_catalog + validate_catalog; throws ValidationError listing every violation.
Catalog load_catalog(std::string_view text, const Taxonomy& taxonomy,
                     std::string_view source = "<catalog>");
Catalog load_catalog_file(const std::filesystem::path& path, const Taxonomy& taxonomy);

std::string render_catalog(const Catalog& catalog);

// The shipped 16-frame climate catalog over climate_taxonomy().
Catalog climate_catalog();

}  // namespace narrframe
