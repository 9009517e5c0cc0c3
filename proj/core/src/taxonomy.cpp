#include "narrframe/taxonomy.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "narrframe/error.hpp"
#include "narrframe/resources.hpp"
#include "narrframe/text.hpp"

namespace narrframe {

Taxonomy::Taxonomy(std::string name, std::string topic, std::vector<TaxonomyClass> classes)
    : name_(std::move(name)), topic_(std::move(topic)), classes_(std::move(classes)) {
  std::vector<std::string> violations;
  if (classes_.empty()) violations.emplace_back("taxonomy has no classes");
  std::set<std::string> seen;
  for (const auto& c : classes_) {
    const auto key = text::canonical_token(c.label);
    if (c.label.empty()) {
      violations.emplace_back("empty class label");
    } else if (key == "NONE" || key == "ANY") {
      violations.push_back("reserved label '" + c.label + "'");
    } else if (!seen.insert(key).second) {
      violations.push_back("duplicate label '" + c.label + "'");
    }
  }
  if (!violations.empty()) throw ValidationError("taxonomy '" + name_ + "'", std::move(violations));
}

std::optional<std::size_t> Taxonomy::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].label == label) return i;
  }
  return std::nullopt;
}

std::optional<std::string_view> Taxonomy::resolve(std::string_view raw) const {
  const auto key = text::canonical_token(raw);
  for (const auto& c : classes_) {
    if (text::canonical_token(c.label) == key) return std::string_view(c.label);
  }
  return std::nullopt;
}

std::vector<std::string> Taxonomy::labels() const {
  std::vector<std::string> out;
  out.reserve(classes_.size());
  for (const auto& c : classes_) out.push_back(c.label);
  return out;
}

Taxonomy parse_taxonomy(std::string_view text, std::string_view source) {
  std::string name;
  std::string topic;
  std::vector<TaxonomyClass> classes;
  std::size_t lineno = 0;
  for (auto raw : text::lines(text)) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '@') {
      const auto sp = line.find_first_of(" \t");
      const auto key = line.substr(1, sp == std::string_view::npos ? line.size() - 1 : sp - 1);
      const auto value = sp == std::string_view::npos ? std::string_view{} : text::trim(line.substr(sp));
      if (key == "name") {
        name = value;
      } else if (key == "topic") {
        topic = value;
      } else {
        throw ParseError(std::string(source), lineno, "unknown directive @" + std::string(key));
      }
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw ParseError(std::string(source), lineno, "expected 'LABEL: description'");
    }
    classes.push_back({std::string(text::trim(line.substr(0, colon))),
                       std::string(text::trim(line.substr(colon + 1)))});
  }
  if (name.empty()) throw ParseError(std::string(source), 0, "missing @name directive");
  return Taxonomy(std::move(name), std::move(topic), std::move(classes));
}

std::string render_taxonomy(const Taxonomy& taxonomy) {
  std::string out;
  out += "@name " + taxonomy.name() + "\n";
  if (!taxonomy.topic().empty()) out += "@topic " + taxonomy.topic() + "\n";
  out += "\n";
  for (const auto& c : taxonomy.classes()) out += c.label + ": " + c.description + "\n";
  return out;
}

Taxonomy load_taxonomy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open taxonomy file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_taxonomy(ss.str(), path.string());
}

void save_taxonomy(const Taxonomy& taxonomy, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write taxonomy file " + path.string());
  out << render_taxonomy(taxonomy);
}

namespace {
Taxonomy builtin(std::string_view name) {
  const auto text = resources::find(name);
  if (!text) throw Error("missing built-in resource " + std::string(name));
  return parse_taxonomy(*text, name);
}
}  // namespace

Taxonomy climate_taxonomy() {
  static const Taxonomy kClimate = builtin("taxonomies/climate.tax");
  return kClimate;
}

Taxonomy covid_taxonomy() {
  static const Taxonomy kCovid = builtin("taxonomies/covid.tax");
  return kCovid;
}

}  // namespace narrframe
