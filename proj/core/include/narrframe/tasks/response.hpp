#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/tasks/task_spec.hpp"

namespace narrframe::tasks {

enum class FailureKind { kNoJsonFound, kMissingField, kUnknownLabel };
std::string_view to_string(FailureKind k);
std::optional<FailureKind> failure_kind_from_string(std::string_view s);

struct ParseFailure {
  FailureKind kind = FailureKind::kNoJsonFound;
  std::string field;
  std::string detail;

  // "UnknownLabel(story: FATALIST)"
  std::string describe() const;
};

struct FieldOutcome {
  std::string field;
  std::optional<std::string> label;  // canonical label or "NONE"
  std::optional<ParseFailure> failure;
};

struct ParseResult {
  // Set when no JSON object could be recovered; `fields` is then empty.
  std::optional<ParseFailure> failure;
  std::vector<FieldOutcome> fields;

  const FieldOutcome* field(std::string_view name) const;
  // Label of `name`, or the failure that prevented it.
  std::optional<std::string> label(std::string_view name) const;
  std::optional<ParseFailure> failure_for(std::string_view name) const;
};

// Text of the first balanced {...} span that parses as a JSON object.
std::optional<std::string> extract_json_object(std::string_view raw);

// Canonical member of `labels` matching `raw`, "NONE" for none-tokens when
// allowed. A "LABEL: description" answer matches on its LABEL part.
std::optional<std::string> match_label(std::string_view raw, const std::vector<std::string>& labels,
                                       bool allows_none);

// Never throws on model output; problems become failure markers.
ParseResult parse_response(const TaskSpec& task, std::string_view raw);

}  // namespace narrframe::tasks
