#include "narrframe/bootstrap.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "narrframe/tasks/prompt.hpp"
#include "narrframe/text.hpp"

namespace narrframe::bootstrap {

using nlohmann::json;

namespace {

const json* find_list(const json& obj, std::initializer_list<std::string_view> names) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const auto key = text::canonical_token(it.key());
    for (auto n : names) {
      if (key == text::canonical_token(n)) return &*it;
    }
  }
  return nullptr;
}

std::string item_text(const json& v) {
  if (v.is_string()) return std::string(text::trim(v.get<std::string>()));
  if (v.is_object()) {
    for (const char* key : {"entity", "type", "name", "label"}) {
      if (auto it = v.find(key); it != v.end() && it->is_string()) return std::string(text::trim(it->get<std::string>()));
    }
  }
  return v.dump();
}

}  // namespace

Extraction parse_candidates(std::string document_id, std::string_view raw) {
  Extraction out;
  out.document_id = std::move(document_id);
  const auto object = tasks::extract_json_object(raw);
  if (!object) {
    out.failure = tasks::ParseFailure{tasks::FailureKind::kNoJsonFound, "", ""};
    return out;
  }
  const auto obj = json::parse(*object);
  CandidateLists lists;
  struct Target {
    std::initializer_list<std::string_view> names;
    std::vector<std::string>* list;
    const char* field;
  };
  const Target targets[] = {{{"heroes", "hero"}, &lists.heroes, "heroes"},
                            {{"villains", "villain"}, &lists.villains, "villains"},
                            {{"victims", "victim"}, &lists.victims, "victims"}};
  for (const auto& t : targets) {
    const json* v = find_list(obj, t.names);
    if (!v || v->is_null()) continue;
    if (v->is_string()) {
      for (const auto& part : text::split(v->get<std::string>(), ',')) {
        if (!text::trim(part).empty()) t.list->emplace_back(text::trim(part));
      }
      continue;
    }
    if (!v->is_array()) {
      out.failure = tasks::ParseFailure{tasks::FailureKind::kMissingField, t.field, "not a list"};
      return out;
    }
    for (const auto& item : *v) {
      auto s = item_text(item);
      if (!s.empty()) t.list->push_back(std::move(s));
    }
  }
  out.candidates = std::move(lists);
  return out;
}

namespace {

std::string address_block(const ArticleRecord& doc) {
  std::string out = "Address:\n";
  if (!text::trim(doc.title).empty()) out += std::string(text::trim(doc.title)) + "\n\n";
  out += text::normalize_newlines(text::trim(doc.text));
  return out;
}

llm::CompletionRequest base_request(const BootstrapConfig& config) {
  llm::CompletionRequest req;
  req.model_id = config.model_id;
  req.max_output = config.max_output;
  return req;
}

}  // namespace

std::vector<Extraction> extract_candidates(std::span<const ArticleRecord> documents, llm::Gateway& gateway,
                                           const BootstrapConfig& config) {
  const auto instructions = tasks::render_template(config.templates.extract_candidates, {{"topic", config.topic}});
  std::vector<llm::CompletionRequest> requests;
  for (const auto& doc : documents) {
    auto req = base_request(config);
    req.prompt = instructions;
    req.article_text = address_block(doc);
    requests.push_back(std::move(req));
  }
  const auto results = gateway.complete_all(requests, true);
  std::vector<Extraction> out;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const auto& r = results[i];
    if (!r.completion) {
      Extraction e;
      e.document_id = documents[i].id;
      e.failure = tasks::ParseFailure{tasks::FailureKind::kNoJsonFound, "", "gateway: " + r.error};
      out.push_back(std::move(e));
      continue;
    }
    auto e = parse_candidates(documents[i].id, r.completion->text);
    e.fingerprint = r.completion->fingerprint;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> merge_candidates(std::span<const Extraction> extractions) {
  std::map<std::string, std::string> by_key;
  for (const auto& e : extractions) {
    if (!e.candidates) continue;
    for (const auto* list : {&e.candidates->heroes, &e.candidates->villains, &e.candidates->victims}) {
      for (const auto& c : *list) {
        const auto t = std::string(text::trim(c));
        if (t.empty()) continue;
        by_key.emplace(text::to_lower(t), t);
      }
    }
  }
  std::vector<std::string> out;
  out.reserve(by_key.size());
  for (auto& [key, value] : by_key) out.push_back(std::move(value));
  return out;
}

EmptyCandidates::EmptyCandidates() : Error("EmptyCandidates: no stakeholder candidates to cluster") {}

ClusteringFailed::ClusteringFailed(const std::string& detail) : Error("ClusteringFailed: " + detail) {}

std::string taxonomy_name_for(std::string_view topic) {
  std::string out;
  for (char c : text::trim(topic)) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out.push_back(static_cast<char>(std::tolower(u)));
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? std::string("domain") : out;
}

Taxonomy parse_clusters(std::string_view raw, const std::string& topic) {
  const auto object = tasks::extract_json_object(raw);
  if (!object) throw ClusteringFailed("no JSON object in the clustering reply");
  const auto obj = json::parse(*object);
  const json* groups = find_list(obj, {"stakeholders", "clusters", "groups"});
  if (!groups) throw ClusteringFailed("reply lacks a 'stakeholders' field");

  std::vector<TaxonomyClass> classes;
  std::set<std::string> seen;
  auto add = [&](const std::string& label_raw, const std::string& description) {
    const auto label = text::upper_snake(label_raw);
    if (label.empty()) throw ClusteringFailed("empty stakeholder label");
    if (!seen.insert(label).second) return;
    classes.push_back({label, std::string(text::trim(description))});
  };
  if (groups->is_array()) {
    for (const auto& g : *groups) {
      if (g.is_string()) {
        add(g.get<std::string>(), "");
      } else if (g.is_object()) {
        auto label = g.find("label");
        if (label == g.end()) label = g.find("name");
        if (label == g.end() || !label->is_string()) throw ClusteringFailed("stakeholder entry without a label");
        std::string desc;
        if (auto d = g.find("description"); d != g.end() && d->is_string()) desc = d->get<std::string>();
        add(label->get<std::string>(), desc);
      } else {
        throw ClusteringFailed("unexpected stakeholder entry " + g.dump());
      }
    }
  } else if (groups->is_object()) {
    for (auto it = groups->begin(); it != groups->end(); ++it) {
      add(it.key(), it->is_string() ? it->get<std::string>() : std::string());
    }
  } else {
    throw ClusteringFailed("'stakeholders' is neither a list nor an object");
  }
  if (classes.empty()) throw ClusteringFailed("no stakeholder groups returned");
  try {
    return Taxonomy(taxonomy_name_for(topic), topic, std::move(classes));
  } catch (const ValidationError& e) {
    throw ClusteringFailed(e.what());
  }
}

Taxonomy cluster_stakeholders(std::span<const std::string> candidates, llm::Gateway& gateway,
                              const BootstrapConfig& config) {
  if (candidates.empty()) throw EmptyCandidates();
  auto req = base_request(config);
  req.prompt = tasks::render_template(config.templates.cluster_stakeholders, {{"topic", config.topic}});
  req.article_text = "Entities:\n";
  for (const auto& c : candidates) req.article_text += "- " + c + "\n";
  req.article_text.pop_back();
  const auto completion = gateway.complete(req);
  return parse_clusters(completion.text, config.topic);
}

std::vector<tasks::TaskSpec> transfer_tasks(const Taxonomy& taxonomy, const std::string& topic,
                                            const tasks::TaskConfig& base) {
  auto config = base;
  config.topic = topic;
  std::vector<tasks::TaskSpec> out;
  for (auto t : {tasks::TaskId::kHero, tasks::TaskId::kVillain, tasks::TaskId::kVictim, tasks::TaskId::kFocus,
                 tasks::TaskId::kConflict, tasks::TaskId::kStory}) {
    out.push_back(tasks::build_task_spec(t, taxonomy, nullptr, config));
  }
  return out;
}

}  // namespace narrframe::bootstrap
