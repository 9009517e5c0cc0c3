#include "narrframe/tasks/prompt.hpp"

#include <random>

#include <json.hpp>

#include "narrframe/labels.hpp"
#include "narrframe/text.hpp"

namespace narrframe::tasks {

MissingStructureLabels::MissingStructureLabels(std::string article_id)
    : Error("structured narrative prompt needs component labels for article '" + article_id + "'") {}

TemplateFieldUnbound::TemplateFieldUnbound(std::string field)
    : Error("prompt template placeholder {" + field + "} has no value"), field_(std::move(field)) {}

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size() * 2);
  for (std::size_t i = 0; i < tmpl.size();) {
    const char c = tmpl[i];
    if ((c == '{' || c == '}') && i + 1 < tmpl.size() && tmpl[i + 1] == c) {
      out.push_back(c);
      i += 2;
      continue;
    }
    if (c == '{') {
      std::size_t j = i + 1;
      while (j < tmpl.size() && ((tmpl[j] >= 'a' && tmpl[j] <= 'z') || tmpl[j] == '_')) ++j;
      if (j < tmpl.size() && tmpl[j] == '}' && j > i + 1) {
        const std::string name(tmpl.substr(i + 1, j - i - 1));
        auto it = vars.find(name);
        if (it == vars.end()) throw TemplateFieldUnbound(name);
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

namespace {

std::string class_lines(const TaskSpec& task) {
  std::string out;
  for (const auto& c : task.prompt_classes) {
    if (!out.empty()) out += '\n';
    out += c.label;
    if (!c.description.empty()) out += ": " + c.description;
  }
  return out;
}

std::string article_block(std::string_view title, std::string_view body) {
  std::string out = "Article:\n";
  const auto t = text::trim(title);
  if (!t.empty()) {
    out += t;
    out += "\n\n";
  }
  out += text::normalize_newlines(text::trim(body));
  return out;
}

// Gold value for a response field, empty when the article lacks it.
std::string gold_value(const ArticleRecord& a, const ResponseField& field) {
  if (field.name == "narrative") return a.gold_narrative.value_or("");
  if (!a.gold) return {};
  std::string slot_name = field.name;
  if (auto pos = slot_name.find("_class"); pos != std::string::npos) slot_name.erase(pos);
  auto slot = slot_from_string(slot_name);
  if (!slot) return {};
  return slot_label(*a.gold, *slot);
}

}  // namespace

Prompt build_prompt(const TaskSpec& task, const ArticleRecord& article,
                    const NarrativeStructure* structure_labels, std::span<const FewShotExample> examples) {
  const bool structured = task.task_id == TaskId::kNarrativeStructured;
  if (structured && !structure_labels) throw MissingStructureLabels(article.id);
  if (!structured && structure_labels) {
    throw Error("structure labels are only used by the narrative_structured task");
  }

  std::map<std::string, std::string> vars = task.bindings;
  vars["topic"] = task.topic;
  vars["classes"] = class_lines(task);

  Prompt p;
  p.instructions = render_template(task.prompt_template, vars);
  if (!examples.empty()) {
    p.instructions += "\n\nLabelled examples:";
    for (const auto& ex : examples) {
      p.instructions += "\n\n" + article_block("", ex.article_text) + "\nAnswer: " + ex.answer_json;
    }
  }

  if (structured) {
    const auto& s = *structure_labels;
    p.input += "Hero: " + std::string(s.hero.render()) + "\n";
    p.input += "Villain: " + std::string(s.villain.render()) + "\n";
    p.input += "Victim: " + std::string(s.victim.render()) + "\n";
    p.input += "Focus: " + (s.focus ? std::string(to_string(*s.focus)) : std::string(kNoneLabel)) + "\n\n";
  }
  p.input += article_block(article.title, article.text);
  return p;
}

std::vector<FewShotExample> sample_few_shot(const TaskSpec& task, std::span<const ArticleRecord> pool,
                                            std::size_t k, std::uint64_t seed,
                                            std::string_view exclude_id) {
  std::vector<const ArticleRecord*> eligible;
  for (const auto& a : pool) {
    if (a.id == exclude_id) continue;
    bool complete = true;
    for (const auto& f : task.response_fields) {
      if (gold_value(a, f).empty()) complete = false;
    }
    if (complete) eligible.push_back(&a);
  }
  // Partial Fisher-Yates on raw engine output so draws match across standard libraries.
  std::mt19937_64 rng(seed);
  const auto n = std::min(k, eligible.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng() % (eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
  }
  std::vector<FewShotExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::ordered_json answer = nlohmann::ordered_json::object();
    for (const auto& f : task.response_fields) answer[f.name] = gold_value(*eligible[i], f);
    out.push_back({eligible[i]->text, answer.dump()});
  }
  return out;
}

}  // namespace narrframe::tasks
