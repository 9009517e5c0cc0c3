#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "narrframe/corpus.hpp"
#include "narrframe/llm/gateway.hpp"
#include "narrframe/structure.hpp"
#include "narrframe/tasks/prompt.hpp"
#include "narrframe/tasks/task_spec.hpp"

namespace narrframe::tasks {

struct PredictionEntry {
  std::string article_id;
  std::optional<std::string> label;
  std::string raw_ref;  // fingerprint of the completion record; empty if none
  std::optional<std::string> failure;

  bool operator==(const PredictionEntry&) const = default;
};

struct PredictionSet {
  TaskId task = TaskId::kHero;
  std::string provider;
  int run_index = 0;
  std::vector<PredictionEntry> entries;  // one per article, corpus order

  std::size_t failures() const;
  const PredictionEntry* find(std::string_view article_id) const;
  bool operator==(const PredictionSet&) const = default;
};

// article id -> hero/villain/victim/focus labels for structured prompts.
using StructureLabelMap = std::map<std::string, NarrativeStructure, std::less<>>;

StructureLabelMap structure_labels_from_gold(std::span<const ArticleRecord> corpus);
// Chains predictions of an earlier HVV run. Failed predictions become NONE
// roles / absent focus.
StructureLabelMap structure_labels_from_predictions(const PredictionSet& hero,
                                                    const PredictionSet& villain,
                                                    const PredictionSet& victim,
                                                    const PredictionSet& focus);

struct RunOptions {
  int runs = 1;
  std::string model_id = "default";
  double temperature = 0.0;
  int max_output = 1024;
  bool fail_soft = true;
  const StructureLabelMap* structure_labels = nullptr;
  std::size_t few_shot = 0;
  std::uint64_t seed = 13;
  std::span<const ArticleRecord> few_shot_pool;  // defaults to the corpus itself
};

// Requests for every (article, run), run-major.
std::vector<llm::CompletionRequest> build_requests(const TaskSpec& task,
                                                   std::span<const ArticleRecord> corpus,
                                                   const RunOptions& options);

// One PredictionSet per run. Gateway failures become per-entry failures when
// fail_soft, otherwise they propagate.
std::vector<PredictionSet> run_task(const TaskSpec& task, std::span<const ArticleRecord> corpus,
                                    llm::Gateway& gateway, const RunOptions& options);

struct SessionSummary {
  std::size_t requests = 0;
  std::size_t distinct = 0;
  std::size_t failed = 0;
  std::size_t live_calls = 0;
};

// Fills the gateway's cache with every (article, task, run) completion.
// Resumable: already-recorded fingerprints are not fetched again.
SessionSummary record_session(std::span<const ArticleRecord> corpus, std::span<const TaskSpec> tasks,
                              llm::Gateway& gateway, const RunOptions& options);

// runs/<provider>/<task>/run<k>.jsonl
std::filesystem::path prediction_path(const std::filesystem::path& root, std::string_view provider,
                                      TaskId task, int run_index);

void write_predictions(std::ostream& out, const PredictionSet& set);
PredictionSet read_predictions(std::istream& in, TaskId task, std::string provider, int run_index,
                               std::string_view source = "<predictions>");
void save_predictions(const std::filesystem::path& root, const PredictionSet& set);
PredictionSet load_predictions(const std::filesystem::path& file, TaskId task,
                               std::string provider = {}, int run_index = 0);
// All run<k>.jsonl files in a task directory, ordered by k.
std::vector<PredictionSet> load_prediction_runs(const std::filesystem::path& task_dir, TaskId task);

}  // namespace narrframe::tasks
