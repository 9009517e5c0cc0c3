#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/structure.hpp"
#include "narrframe/taxonomy.hpp"
#include "narrframe/vocab.hpp"

namespace narrframe {

// Outlet bias class (Media Bias/Fact Check buckets).
enum class Leaning { kLeft, kLeftCenter, kCenter, kRightCenter, kRight };
inline constexpr std::array<Leaning, 5> kAllLeanings{Leaning::kLeft, Leaning::kLeftCenter,
                                                     Leaning::kCenter, Leaning::kRightCenter,
                                                     Leaning::kRight};
std::string_view to_string(Leaning l);  // "left", "left-center", ...
std::optional<Leaning> leaning_from_string(std::string_view s);

// Semetko & Valkenburg generic frames, carried as metadata only.
enum class GenericFrame { kConflict, kEconomic, kHumanInterest, kMorality, kResolution };
inline constexpr std::array<GenericFrame, 5> kAllGenericFrames{
    GenericFrame::kConflict, GenericFrame::kEconomic, GenericFrame::kHumanInterest,
    GenericFrame::kMorality, GenericFrame::kResolution};
std::string_view to_string(GenericFrame g);  // "Conflict", "Economic", "HumanInterest", ...
std::optional<GenericFrame> generic_frame_from_string(std::string_view s);

struct ArticleRecord {
  std::string id;
  std::string title;
  std::string text;
  std::string outlet;
  std::optional<Leaning> leaning;
  std::optional<int> year;
  std::optional<NarrativeStructure> gold;
  std::optional<std::string> gold_narrative;
  std::optional<std::set<GenericFrame>> generic_frames;

  bool operator==(const ArticleRecord&) const = default;
};

// One annotator's label for one slot of one article.
struct AnnotationRecord {
  std::string article_id;
  std::string annotator_id;
  Slot slot = Slot::kHero;
  std::string label;  // canonical rendering (see render_label)

  bool operator==(const AnnotationRecord&) const = default;
};

// Maps canonical field names to the keys used by an external file. Unlisted
// fields use their canonical name. Keys may be JSON pointers ("/meta/outlet").
// Canonical names: id title text outlet leaning year gold gold_narrative
// generic_frames, plus gold.hero ... gold.story for flattened gold labels.
class FieldMapping {
 public:
  FieldMapping() = default;
  static FieldMapping parse(std::string_view text, std::string_view source = "<mapping>");

  void set(std::string canonical, std::string source_key);
  std::optional<std::string> source_for(std::string_view canonical) const;
  bool empty() const { return map_.empty(); }

 private:
  std::map<std::string, std::string, std::less<>> map_;
};

// Parses one JSON-lines record. Gold labels are normalized through the taxonomy;
// unknown leanings are dropped to absent. Throws ParseError / UnknownLabel.
ArticleRecord parse_article(std::string_view json_line, const Taxonomy& taxonomy,
                            const FieldMapping& mapping = {});
std::string to_json_line(const ArticleRecord& article);

// Reads a corpus and checks id uniqueness and non-empty text (ValidationError).
std::vector<ArticleRecord> read_corpus(std::istream& in, const Taxonomy& taxonomy,
                                       const FieldMapping& mapping = {},
                                       std::string_view source = "<corpus>");
std::vector<ArticleRecord> load_corpus(const std::filesystem::path& path, const Taxonomy& taxonomy,
                                       const FieldMapping& mapping = {});
void write_corpus(std::ostream& out, std::span<const ArticleRecord> corpus);
void save_corpus(const std::filesystem::path& path, std::span<const ArticleRecord> corpus);

std::vector<std::string> validate_corpus(std::span<const ArticleRecord> corpus);

// Annotation JSON lines: {"article_id", "annotator_id", "slot", "label"}.
std::vector<AnnotationRecord> read_annotations(std::istream& in, const Taxonomy& taxonomy,
                                               std::string_view source = "<annotations>");
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path,
                                               const Taxonomy& taxonomy);
void write_annotations(std::ostream& out, std::span<const AnnotationRecord> records);

const ArticleRecord* find_article(std::span<const ArticleRecord> corpus, std::string_view id);

}  // namespace narrframe
