#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace narrframe {

struct TaxonomyClass {
  std::string label;
  std::string description;

  bool operator==(const TaxonomyClass&) const = default;
};

// Closed, ordered set of stakeholder categories for one domain. The
// constructor enforces non-empty, unique labels; NONE is reserved.
class Taxonomy {
 public:
  Taxonomy(std::string name, std::string topic, std::vector<TaxonomyClass> classes);

  const std::string& name() const { return name_; }
  const std::string& topic() const { return topic_; }
  const std::vector<TaxonomyClass>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }

  bool contains(std::string_view label) const { return index_of(label).has_value(); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  // Case/spacing-insensitive lookup returning the stored spelling.
  std::optional<std::string_view> resolve(std::string_view raw) const;

  std::vector<std::string> labels() const;

  bool operator==(const Taxonomy&) const = default;

 private:
  std::string name_;
  std::string topic_;
  std::vector<TaxonomyClass> classes_;
};

// Text format:
//   # comment
//   @name climate
//   @topic climate change
//   LABEL: one-line description
Taxonomy parse_taxonomy(std::string_view text, std::string_view source = "<taxonomy>");
std::string render_taxonomy(const Taxonomy& taxonomy);

Taxonomy load_taxonomy(const std::filesystem::path& path);
void save_taxonomy(const Taxonomy& taxonomy, const std::filesystem::path& path);

// Built-in taxonomies shipped under data/taxonomies.
Taxonomy climate_taxonomy();
Taxonomy covid_taxonomy();

}  // namespace narrframe
