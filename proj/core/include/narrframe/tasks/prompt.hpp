#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/corpus.hpp"
#include "narrframe/error.hpp"
#include "narrframe/structure.hpp"
#include "narrframe/tasks/task_spec.hpp"

namespace narrframe::tasks {

class MissingStructureLabels : public Error {
 public:
  explicit MissingStructureLabels(std::string article_id);
};

class TemplateFieldUnbound : public Error {
 public:
  explicit TemplateFieldUnbound(std::string field);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Substitutes {name} placeholders; "{{"/"}}" yield literal braces. A brace
// pair enclosing anything but [a-z_] is copied verbatim.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars);

struct Prompt {
  std::string instructions;
  std::string input;

  std::string full() const { return instructions + "\n\n" + input; }
  bool operator==(const Prompt&) const = default;
};

// One demonstration for few-shot prompting.
struct FewShotExample {
  std::string article_text;
  std::string answer_json;
};

// Assembles the prompt for one article. `structure_labels` (hero, villain,
// victim, focus) is required for NARRATIVE_STRUCTURED and rejected otherwise.
Prompt build_prompt(const TaskSpec& task, const ArticleRecord& article,
                    const NarrativeStructure* structure_labels = nullptr,
                    std::span<const FewShotExample> examples = {});

// Deterministic seeded draw of `k` gold-labelled articles (never `exclude_id`)
// rendered as demonstrations for `task`.
std::vector<FewShotExample> sample_few_shot(const TaskSpec& task, std::span<const ArticleRecord> pool,
                                            std::size_t k, std::uint64_t seed,
                                            std::string_view exclude_id = {});

}  // namespace narrframe::tasks
