#include "narrframe/tasks/response.hpp"

#include <json.hpp>

#include "narrframe/labels.hpp"
#include "narrframe/text.hpp"

namespace narrframe::tasks {

using nlohmann::json;

std::string_view to_string(FailureKind k) {
  switch (k) {
    case FailureKind::kNoJsonFound: return "NoJsonFound";
    case FailureKind::kMissingField: return "MissingField";
    case FailureKind::kUnknownLabel: return "UnknownLabel";
  }
  return "?";
}

std::optional<FailureKind> failure_kind_from_string(std::string_view s) {
  for (auto k : {FailureKind::kNoJsonFound, FailureKind::kMissingField, FailureKind::kUnknownLabel}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string ParseFailure::describe() const {
  std::string out(to_string(kind));
  if (field.empty() && detail.empty()) return out;
  out += "(" + field;
  if (!detail.empty()) out += (field.empty() ? "" : ": ") + detail;
  return out + ")";
}

const FieldOutcome* ParseResult::field(std::string_view name) const {
  for (const auto& f : fields) {
    if (f.field == name) return &f;
  }
  return nullptr;
}

std::optional<std::string> ParseResult::label(std::string_view name) const {
  const auto* f = field(name);
  return f ? f->label : std::nullopt;
}

std::optional<ParseFailure> ParseResult::failure_for(std::string_view name) const {
  if (failure) return failure;
  const auto* f = field(name);
  if (!f) return ParseFailure{FailureKind::kMissingField, std::string(name), ""};
  return f->failure;
}

std::optional<std::string> extract_json_object(std::string_view raw) {
  for (std::size_t start = raw.find('{'); start != std::string_view::npos;
       start = raw.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < raw.size(); ++i) {
      const char c = raw[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        const auto candidate = raw.substr(start, i - start + 1);
        if (json::accept(candidate)) return std::string(candidate);
        break;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> match_label(std::string_view raw, const std::vector<std::string>& labels,
                                       bool allows_none) {
  auto try_match = [&](std::string_view candidate) -> std::optional<std::string> {
    const auto key = text::canonical_token(candidate);
    if (key.empty()) return std::nullopt;
    for (const auto& l : labels) {
      if (text::canonical_token(l) == key) return l;
    }
    return std::nullopt;
  };
  if (allows_none && is_none_token(raw)) return std::string(kNoneLabel);
  if (auto m = try_match(raw)) return m;
  // "LABEL: description" and "LABEL - description" answers.
  for (const auto sep : {std::string_view(":"), std::string_view(" - ")}) {
    if (auto pos = raw.find(sep); pos != std::string_view::npos) {
      const auto head = raw.substr(0, pos);
      if (allows_none && is_none_token(head)) return std::string(kNoneLabel);
      if (auto m = try_match(head)) return m;
    }
  }
  return std::nullopt;
}

namespace {

const json* find_key(const json& obj, const ResponseField& field) {
  auto exact = obj.find(field.name);
  if (exact != obj.end()) return &*exact;
  std::vector<std::string> names{field.name};
  names.insert(names.end(), field.aliases.begin(), field.aliases.end());
  for (const auto& n : names) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (text::canonical_token(it.key()) == text::canonical_token(n)) return &*it;
    }
  }
  return nullptr;
}

FieldOutcome parse_field(const json& obj, const ResponseField& field) {
  FieldOutcome out;
  out.field = field.name;
  const json* v = find_key(obj, field);
  if (!v) {
    out.failure = ParseFailure{FailureKind::kMissingField, field.name, ""};
    return out;
  }
  const json* value = v;
  if (value->is_array() && value->size() == 1) value = &(*value)[0];
  std::string raw;
  if (value->is_null()) {
    raw = "";
  } else if (value->is_string()) {
    raw = value->get<std::string>();
  } else {
    raw = value->dump();
  }
  if (value->is_null() && !field.allows_none) {
    out.failure = ParseFailure{FailureKind::kMissingField, field.name, "null"};
    return out;
  }
  if (auto label = match_label(raw, field.labels, field.allows_none)) {
    out.label = std::move(*label);
  } else {
    out.failure = ParseFailure{FailureKind::kUnknownLabel, field.name, std::string(text::trim(raw))};
  }
  return out;
}

}  // namespace

ParseResult parse_response(const TaskSpec& task, std::string_view raw) {
  ParseResult result;
  const auto object = extract_json_object(raw);
  if (!object) {
    result.failure = ParseFailure{FailureKind::kNoJsonFound, "", ""};
    return result;
  }
  const auto obj = json::parse(*object);
  for (const auto& f : task.response_fields) result.fields.push_back(parse_field(obj, f));
  return result;
}

}  // namespace narrframe::tasks
