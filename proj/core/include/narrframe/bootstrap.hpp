#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "narrframe/corpus.hpp"
#include "narrframe/error.hpp"
#include "narrframe/llm/gateway.hpp"
#include "narrframe/taxonomy.hpp"
#include "narrframe/tasks/response.hpp"
#include "narrframe/tasks/task_spec.hpp"

// Stakeholder taxonomy discovery for a domain without a reference taxonomy:
// per-document role candidate extraction, then one clustering call.
namespace narrframe::bootstrap {

struct CandidateLists {
  std::vector<std::string> heroes;
  std::vector<std::string> villains;
  std::vector<std::string> victims;

  bool operator==(const CandidateLists&) const = default;
};

struct Extraction {
  std::string document_id;
  std::optional<CandidateLists> candidates;
  std::optional<tasks::ParseFailure> failure;
  std::string fingerprint;
};

struct BootstrapConfig {
  std::string topic = "COVID-19";
  std::string model_id = "default";
  int max_output = 1024;
  tasks::PromptTemplates templates = tasks::PromptTemplates::builtin();
};

// Parses the {"heroes": [...], "villains": [...], "victims": [...]} reply.
// Missing lists count as empty and a comma-separated string counts as a list;
// no object or any other field type is a failure.
Extraction parse_candidates(std::string document_id, std::string_view raw);

// One completion per document; failures are recorded, never thrown.
std::vector<Extraction> extract_candidates(std::span<const ArticleRecord> documents,
                                           llm::Gateway& gateway, const BootstrapConfig& config);

// All candidates of successful extractions, trimmed, deduplicated
// case-insensitively and sorted by lower-cased text.
std::vector<std::string> merge_candidates(std::span<const Extraction> extractions);

class EmptyCandidates : public Error {
 public:
  EmptyCandidates();
};

class ClusteringFailed : public Error {
 public:
  explicit ClusteringFailed(const std::string& detail);
};

// Parses the clustering reply into a taxonomy with UPPER_SNAKE labels.
Taxonomy parse_clusters(std::string_view raw, const std::string& topic);

// Single clustering call over `candidates`; throws EmptyCandidates,
// ClusteringFailed, or gateway errors.
Taxonomy cluster_stakeholders(std::span<const std::string> candidates, llm::Gateway& gateway,
                              const BootstrapConfig& config);

// Component TaskSpecs for a new domain: HVV prompts list the new taxonomy;
// focus/conflict/story keep their label spaces and change only the topic.
std::vector<tasks::TaskSpec> transfer_tasks(const Taxonomy& taxonomy, const std::string& topic,
                                            const tasks::TaskConfig& base = {});

// Taxonomy name used for a topic ("COVID-19" -> "covid-19").
std::string taxonomy_name_for(std::string_view topic);

}  // namespace narrframe::bootstrap
