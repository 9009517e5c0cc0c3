#include "narrframe/tasks/runner.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <set>

#include <json.hpp>

#include "narrframe/labels.hpp"
#include "narrframe/tasks/response.hpp"
#include "narrframe/text.hpp"

namespace narrframe::tasks {

using nlohmann::json;

std::size_t PredictionSet::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.label.has_value(); }));
}

const PredictionEntry* PredictionSet::find(std::string_view article_id) const {
  for (const auto& e : entries) {
    if (e.article_id == article_id) return &e;
  }
  return nullptr;
}

StructureLabelMap structure_labels_from_gold(std::span<const ArticleRecord> corpus) {
  StructureLabelMap out;
  for (const auto& a : corpus) {
    if (!a.gold) continue;
    NarrativeStructure s;
    s.hero = a.gold->hero;
    s.villain = a.gold->villain;
    s.victim = a.gold->victim;
    s.focus = a.gold->focus;
    out.emplace(a.id, s);
  }
  return out;
}

StructureLabelMap structure_labels_from_predictions(const PredictionSet& hero, const PredictionSet& villain,
                                                    const PredictionSet& victim, const PredictionSet& focus) {
  StructureLabelMap out;
  auto role = [](const PredictionSet& set, const std::string& id) {
    const auto* e = set.find(id);
    if (!e || !e->label || *e->label == kNoneLabel) return Stakeholder::none();
    return Stakeholder(*e->label);
  };
  for (const auto& e : hero.entries) {
    NarrativeStructure s;
    s.hero = role(hero, e.article_id);
    s.villain = role(villain, e.article_id);
    s.victim = role(victim, e.article_id);
    if (const auto* f = focus.find(e.article_id); f && f->label) s.focus = focus_from_token(*f->label);
    out.emplace(e.article_id, s);
  }
  return out;
}

namespace {

struct Built {
  std::vector<llm::CompletionRequest> requests;
  // Per request: error raised while building its prompt, if any.
  std::vector<std::string> errors;
};

Built build(const TaskSpec& task, std::span<const ArticleRecord> corpus, const RunOptions& options,
            bool fail_soft) {
  Built out;
  const auto runs = std::max(options.runs, 1);
  const auto pool = options.few_shot_pool.empty() ? corpus : options.few_shot_pool;
  StructureLabelMap gold_labels;
  const StructureLabelMap* labels = options.structure_labels;
  if (task.task_id == TaskId::kNarrativeStructured && !labels) {
    gold_labels = structure_labels_from_gold(corpus);
    labels = &gold_labels;
  }
  for (int run = 0; run < runs; ++run) {
    for (const auto& a : corpus) {
      llm::CompletionRequest req;
      req.model_id = options.model_id;
      req.temperature = options.temperature;
      req.max_output = options.max_output;
      req.run_index = run;
      std::string error;
      try {
        const NarrativeStructure* s = nullptr;
        if (task.task_id == TaskId::kNarrativeStructured) {
          auto it = labels->find(a.id);
          if (it == labels->end()) throw MissingStructureLabels(a.id);
          s = &it->second;
        }
        std::vector<FewShotExample> shots;
        if (options.few_shot > 0) shots = sample_few_shot(task, pool, options.few_shot, options.seed, a.id);
        auto prompt = build_prompt(task, a, s, shots);
        req.prompt = std::move(prompt.instructions);
        req.article_text = std::move(prompt.input);
      } catch (const Error& e) {
        if (!fail_soft) throw;
        error = e.what();
      }
      out.requests.push_back(std::move(req));
      out.errors.push_back(std::move(error));
    }
  }
  return out;
}

}  // namespace

std::vector<llm::CompletionRequest> build_requests(const TaskSpec& task, std::span<const ArticleRecord> corpus,
                                                   const RunOptions& options) {
  return build(task, corpus, options, false).requests;
}

std::vector<PredictionSet> run_task(const TaskSpec& task, std::span<const ArticleRecord> corpus,
                                    llm::Gateway& gateway, const RunOptions& options) {
  auto built = build(task, corpus, options, options.fail_soft);
  // Requests whose prompt could not be built are left out of the batch.
  std::vector<llm::CompletionRequest> sendable;
  std::vector<std::size_t> slot_of;
  for (std::size_t i = 0; i < built.requests.size(); ++i) {
    if (built.errors[i].empty()) {
      slot_of.push_back(i);
      sendable.push_back(built.requests[i]);
    }
  }
  auto results = gateway.complete_all(sendable, options.fail_soft);
  std::vector<std::optional<llm::BatchItem>> by_request(built.requests.size());
  for (std::size_t k = 0; k < slot_of.size(); ++k) by_request[slot_of[k]] = std::move(results[k]);

  const auto runs = std::max(options.runs, 1);
  std::vector<PredictionSet> out;
  for (int run = 0; run < runs; ++run) {
    PredictionSet set;
    set.task = task.task_id;
    set.provider = gateway.provider().name();
    set.run_index = run;
    for (std::size_t a = 0; a < corpus.size(); ++a) {
      const auto i = static_cast<std::size_t>(run) * corpus.size() + a;
      PredictionEntry e;
      e.article_id = corpus[a].id;
      if (!built.errors[i].empty()) {
        e.failure = "PromptError(" + built.errors[i] + ")";
      } else if (!by_request[i]->completion) {
        e.failure = "GatewayError(" + by_request[i]->error + ")";
      } else {
        const auto& c = *by_request[i]->completion;
        e.raw_ref = c.fingerprint;
        auto parsed = parse_response(task, c.text);
        e.label = parsed.label(task.primary_field);
        if (!e.label) {
          auto f = parsed.failure_for(task.primary_field);
          e.failure = f ? f->describe() : std::string("MissingField");
        }
      }
      set.entries.push_back(std::move(e));
    }
    out.push_back(std::move(set));
  }
  return out;
}

SessionSummary record_session(std::span<const ArticleRecord> corpus, std::span<const TaskSpec> tasks,
                              llm::Gateway& gateway, const RunOptions& options) {
  SessionSummary summary;
  const auto calls_before = gateway.live_calls();
  std::vector<llm::CompletionRequest> all;
  for (const auto& task : tasks) {
    auto built = build(task, corpus, options, true);
    for (std::size_t i = 0; i < built.requests.size(); ++i) {
      if (built.errors[i].empty()) {
        all.push_back(std::move(built.requests[i]));
      } else {
        ++summary.failed;
      }
    }
  }
  summary.requests = all.size() + summary.failed;
  std::set<std::string> distinct;
  for (const auto& r : all) distinct.insert(gateway.fingerprint_of(r));
  summary.distinct = distinct.size();
  for (const auto& item : gateway.complete_all(all, true)) {
    if (!item.completion) ++summary.failed;
  }
  summary.live_calls = gateway.live_calls() - calls_before;
  return summary;
}

std::filesystem::path prediction_path(const std::filesystem::path& root, std::string_view provider, TaskId task,
                                      int run_index) {
  return root / std::string(provider) / std::string(to_string(task)) / ("run" + std::to_string(run_index) + ".jsonl");
}

void write_predictions(std::ostream& out, const PredictionSet& set) {
  for (const auto& e : set.entries) {
    json obj{{"article_id", e.article_id},
             {"label", e.label ? json(*e.label) : json(nullptr)},
             {"raw_ref", e.raw_ref},
             {"failure", e.failure ? json(*e.failure) : json(nullptr)}};
    out << obj.dump() << '\n';
  }
}

PredictionSet read_predictions(std::istream& in, TaskId task, std::string provider, int run_index,
                               std::string_view source) {
  PredictionSet set;
  set.task = task;
  set.provider = std::move(provider);
  set.run_index = run_index;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      const auto obj = json::parse(line);
      PredictionEntry e;
      e.article_id = obj.at("article_id").get<std::string>();
      if (auto it = obj.find("label"); it != obj.end() && it->is_string()) e.label = it->get<std::string>();
      e.raw_ref = obj.value("raw_ref", "");
      if (auto it = obj.find("failure"); it != obj.end() && it->is_string()) e.failure = it->get<std::string>();
      if (!seen.insert(e.article_id).second) {
        throw ParseError(std::string(source), lineno, "duplicate article_id '" + e.article_id + "'");
      }
      set.entries.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw ParseError(std::string(source), lineno, ex.what());
    }
  }
  return set;
}

void save_predictions(const std::filesystem::path& root, const PredictionSet& set) {
  const auto path = prediction_path(root, set.provider, set.task, set.run_index);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write predictions " + path.string());
  write_predictions(out, set);
}

PredictionSet load_predictions(const std::filesystem::path& file, TaskId task, std::string provider,
                               int run_index) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open predictions " + file.string());
  return read_predictions(in, task, std::move(provider), run_index, file.string());
}

std::vector<PredictionSet> load_prediction_runs(const std::filesystem::path& task_dir, TaskId task) {
  static const std::regex kRunFile(R"(run(\d+)\.jsonl)");
  std::vector<std::pair<int, std::filesystem::path>> files;
  if (!std::filesystem::is_directory(task_dir)) throw Error("no prediction directory " + task_dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(task_dir)) {
    std::smatch m;
    const auto name = entry.path().filename().string();
    if (std::regex_match(name, m, kRunFile)) files.emplace_back(std::stoi(m[1].str()), entry.path());
  }
  std::sort(files.begin(), files.end());
  const auto provider = task_dir.parent_path().filename().string();
  std::vector<PredictionSet> out;
  for (const auto& [k, path] : files) out.push_back(load_predictions(path, task, provider, k));
  return out;
}

}  // namespace narrframe::tasks
