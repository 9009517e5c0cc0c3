#include "narrframe/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "narrframe/error.hpp"
#include "narrframe/labels.hpp"
#include "narrframe/text.hpp"

namespace narrframe {

using nlohmann::json;

std::string_view to_string(Leaning l) {
  switch (l) {
    case Leaning::kLeft: return "left";
    case Leaning::kLeftCenter: return "left-center";
    case Leaning::kCenter: return "center";
    case Leaning::kRightCenter: return "right-center";
    case Leaning::kRight: return "right";
  }
  return "?";
}

std::optional<Leaning> leaning_from_string(std::string_view s) {
  const auto t = text::canonical_token(s);
  for (auto l : kAllLeanings) {
    if (t == text::canonical_token(to_string(l))) return l;
  }
  if (t == "LEAST_BIASED") return Leaning::kCenter;
  return std::nullopt;
}

std::string_view to_string(GenericFrame g) {
  switch (g) {
    case GenericFrame::kConflict: return "Conflict";
    case GenericFrame::kEconomic: return "Economic";
    case GenericFrame::kHumanInterest: return "HumanInterest";
    case GenericFrame::kMorality: return "Morality";
    case GenericFrame::kResolution: return "Resolution";
  }
  return "?";
}

std::optional<GenericFrame> generic_frame_from_string(std::string_view s) {
  std::string key;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) key.push_back(static_cast<char>(std::tolower(c)));
  }
  if (key == "economics" || key == "economicconsequences") return GenericFrame::kEconomic;
  if (key == "responsibility" || key == "attributionofresponsibility") return GenericFrame::kResolution;
  for (auto g : kAllGenericFrames) {
    if (key == text::to_lower(to_string(g))) return g;
  }
  return std::nullopt;
}

FieldMapping FieldMapping::parse(std::string_view text, std::string_view source) {
  FieldMapping m;
  std::size_t lineno = 0;
  for (auto raw : text::lines(text)) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(std::string(source), lineno, "expected 'field = key'");
    auto canonical = std::string(text::trim(line.substr(0, eq)));
    auto key = std::string(text::trim(line.substr(eq + 1)));
    if (canonical.empty() || key.empty()) {
      throw ParseError(std::string(source), lineno, "empty field or key");
    }
    m.set(std::move(canonical), std::move(key));
  }
  return m;
}

void FieldMapping::set(std::string canonical, std::string source_key) {
  map_[std::move(canonical)] = std::move(source_key);
}

std::optional<std::string> FieldMapping::source_for(std::string_view canonical) const {
  auto it = map_.find(canonical);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

namespace {

const json* lookup(const json& obj, const FieldMapping& mapping, std::string_view canonical) {
  const auto key = mapping.source_for(canonical).value_or(std::string(canonical));
  if (!key.empty() && key.front() == '/') {
    const json::json_pointer ptr(key);
    if (!obj.contains(ptr)) return nullptr;
    const auto& v = obj.at(ptr);
    return v.is_null() ? nullptr : &v;
  }
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string as_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return v.dump();
}

std::optional<NarrativeStructure> parse_gold(const json& obj, const FieldMapping& mapping,
                                             const Taxonomy& taxonomy) {
  NarrativeStructure s;
  bool any = false;
  const json* nested = lookup(obj, mapping, "gold");
  if (nested && !nested->is_object()) throw Error("field 'gold' must be an object");
  for (auto slot : kAllSlots) {
    const auto name = std::string(to_string(slot));
    const json* v = nullptr;
    if (nested) {
      auto it = nested->find(name);
      if (it != nested->end() && !it->is_null()) v = &*it;
    }
    if (!v) v = lookup(obj, mapping, "gold." + name);
    if (!v) continue;
    any = true;
    assign(s, slot, parse_label(slot, as_text(*v), taxonomy));
  }
  if (!any) return std::nullopt;
  return s;
}

}  // namespace

ArticleRecord parse_article(std::string_view json_line, const Taxonomy& taxonomy,
                            const FieldMapping& mapping) {
  json obj;
  try {
    obj = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw ParseError("<json>", 0, e.what());
  }
  if (!obj.is_object()) throw ParseError("<json>", 0, "record is not a JSON object");

  ArticleRecord a;
  auto str = [&](std::string_view field) -> std::string {
    const json* v = lookup(obj, mapping, field);
    return v ? as_text(*v) : std::string();
  };
  a.id = str("id");
  a.title = str("title");
  a.text = str("text");
  a.outlet = str("outlet");
  if (const json* v = lookup(obj, mapping, "leaning")) a.leaning = leaning_from_string(as_text(*v));
  if (const json* v = lookup(obj, mapping, "year")) {
    if (v->is_number_integer()) {
      a.year = v->get<int>();
    } else if (v->is_string()) {
      try {
        a.year = std::stoi(v->get<std::string>());
      } catch (const std::exception&) {
        throw ParseError("<json>", 0, "year is not an integer: " + v->get<std::string>());
      }
    }
  }
  try {
    a.gold = parse_gold(obj, mapping, taxonomy);
  } catch (const UnknownLabel&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("<json>", 0, e.what());
  }
  if (const json* v = lookup(obj, mapping, "gold_narrative")) {
    auto id = text::canonical_token(as_text(*v));
    if (!id.empty() && id != "NONE") a.gold_narrative = std::move(id);
  }
  if (const json* v = lookup(obj, mapping, "generic_frames")) {
    std::set<GenericFrame> frames;
    auto add = [&](const std::string& raw) {
      auto g = generic_frame_from_string(raw);
      if (!g) throw UnknownLabel(raw, "generic_frames");
      frames.insert(*g);
    };
    if (v->is_array()) {
      for (const auto& item : *v) add(as_text(item));
    } else if (v->is_object()) {
      // {"Conflict": 1, "Economic": 0, ...}
      for (auto it = v->begin(); it != v->end(); ++it) {
        const bool on = it->is_boolean() ? it->get<bool>()
                        : it->is_number() ? it->get<double>() > 0
                                          : false;
        if (on) add(it.key());
      }
    } else {
      for (const auto& part : text::split(as_text(*v), ',')) {
        if (!text::trim(part).empty()) add(std::string(text::trim(part)));
      }
    }
    a.generic_frames = std::move(frames);
  }
  return a;
}

std::string to_json_line(const ArticleRecord& a) {
  json obj = json::object();
  obj["id"] = a.id;
  if (!a.title.empty()) obj["title"] = a.title;
  obj["text"] = a.text;
  if (!a.outlet.empty()) obj["outlet"] = a.outlet;
  if (a.leaning) obj["leaning"] = std::string(to_string(*a.leaning));
  if (a.year) obj["year"] = *a.year;
  if (a.gold) {
    json g = json::object();
    for (auto slot : kAllSlots) {
      auto label = slot_label(*a.gold, slot);
      if (!label.empty()) g[std::string(to_string(slot))] = label;
    }
    obj["gold"] = std::move(g);
  }
  if (a.gold_narrative) obj["gold_narrative"] = *a.gold_narrative;
  if (a.generic_frames) {
    json arr = json::array();
    for (auto g : *a.generic_frames) arr.push_back(std::string(to_string(g)));
    obj["generic_frames"] = std::move(arr);
  }
  return obj.dump();
}

std::vector<std::string> validate_corpus(std::span<const ArticleRecord> corpus) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus[i];
    const auto where = "record " + std::to_string(i + 1);
    if (a.id.empty()) {
      out.push_back(where + ": empty id");
    } else if (!seen.insert(a.id).second) {
      out.push_back(where + ": duplicate id '" + a.id + "'");
    }
    if (text::trim(a.text).empty()) out.push_back(where + ": empty text for '" + a.id + "'");
  }
  return out;
}

std::vector<ArticleRecord> read_corpus(std::istream& in, const Taxonomy& taxonomy,
                                       const FieldMapping& mapping, std::string_view source) {
  std::vector<ArticleRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(parse_article(line, taxonomy, mapping));
    } catch (const ParseError& e) {
      throw ParseError(std::string(source), lineno, e.what());
    }
  }
  auto violations = validate_corpus(out);
  if (!violations.empty()) throw ValidationError(std::string(source), std::move(violations));
  return out;
}

std::vector<ArticleRecord> load_corpus(const std::filesystem::path& path, const Taxonomy& taxonomy,
                                       const FieldMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus " + path.string());
  return read_corpus(in, taxonomy, mapping, path.string());
}

void write_corpus(std::ostream& out, std::span<const ArticleRecord> corpus) {
  for (const auto& a : corpus) out << to_json_line(a) << '\n';
}

void save_corpus(const std::filesystem::path& path, std::span<const ArticleRecord> corpus) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write corpus " + path.string());
  write_corpus(out, corpus);
}

std::vector<AnnotationRecord> read_annotations(std::istream& in, const Taxonomy& taxonomy,
                                               std::string_view source) {
  std::vector<AnnotationRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string(source), lineno, e.what());
    }
    auto field = [&](const char* key) -> std::string {
      auto it = obj.find(key);
      if (it == obj.end() || it->is_null()) {
        throw ParseError(std::string(source), lineno, std::string("missing field '") + key + "'");
      }
      return as_text(*it);
    };
    AnnotationRecord r;
    r.article_id = field("article_id");
    r.annotator_id = field("annotator_id");
    const auto slot_name = field("slot");
    auto slot = slot_from_string(slot_name);
    if (!slot) throw ParseError(std::string(source), lineno, "unknown slot '" + slot_name + "'");
    r.slot = *slot;
    auto it = obj.find("label");
    const auto raw = (it == obj.end() || it->is_null()) ? std::string() : as_text(*it);
    r.label = render_label(parse_label(r.slot, raw, taxonomy));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path,
                                               const Taxonomy& taxonomy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open annotations " + path.string());
  return read_annotations(in, taxonomy, path.string());
}

void write_annotations(std::ostream& out, std::span<const AnnotationRecord> records) {
  for (const auto& r : records) {
    json obj{{"article_id", r.article_id},
             {"annotator_id", r.annotator_id},
             {"slot", std::string(to_string(r.slot))},
             {"label", r.label}};
    out << obj.dump() << '\n';
  }
}

const ArticleRecord* find_article(std::span<const ArticleRecord> corpus, std::string_view id) {
  for (const auto& a : corpus) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

}  // namespace narrframe
