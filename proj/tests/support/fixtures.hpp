#pragma once

// Deterministic fixture corpora and the scripted model answers recorded into
// the replay archives under tests/fixtures.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "narrframe/catalog.hpp"
#include "narrframe/corpus.hpp"
#include "narrframe/llm/provider.hpp"
#include "narrframe/tasks/task_spec.hpp"

namespace narrframe::fixtures {

// Two articles per catalog frame, each gold structure matching its frame uniquely.
std::vector<ArticleRecord> climate_corpus();
// Four annotators (one of them "expert") on hero, villain and story.
std::vector<AnnotationRecord> climate_annotations();
std::vector<ArticleRecord> covid_speeches();

// Scripted answer for any request built by the task runner over climate_corpus().
std::string climate_answer(const llm::CompletionRequest& request);
// Scripted answer for the bootstrap requests over covid_speeches().
std::string covid_answer(const llm::CompletionRequest& request);

// Writes climate/, covid/ and replay/{climate,covid}/ under `root`. Record
// timestamps are pinned so regeneration is byte-identical.
void write_all(const std::filesystem::path& root);

struct AdversarialCase {
  tasks::TaskId task;
  std::string raw;
  // Expected label of the primary field; nullopt when a failure marker is expected.
  std::optional<std::string> expected;
};

// Fenced, prose-wrapped, reordered, wrong-case and otherwise awkward replies.
std::vector<AdversarialCase> adversarial_cases();

}  // namespace narrframe::fixtures
