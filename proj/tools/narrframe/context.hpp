#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "narrframe/catalog.hpp"
#include "narrframe/kv_config.hpp"
#include "narrframe/llm/gateway.hpp"
#include "narrframe/tasks/task_spec.hpp"
#include "narrframe/taxonomy.hpp"

namespace narrframe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitProvider = 2;
inline constexpr int kExitUsage = 64;

enum class OutputFormat { kJson, kCsv };

// Values of the global flags; empty/unset means "take it from the config".
struct GlobalFlags {
  std::string config_file;
  std::string cache_dir;
  std::string provider;
  std::string replay;
  std::string model;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_in_flight;
  std::string taxonomy;
  std::string catalog;
  std::string topic;
  std::string format = "json";
};

void add_global_flags(CLI::App& app, GlobalFlags& flags);

// Resolved configuration: built-in defaults, then the config file, then
// NARRFRAME_* environment variables, then flags.
class Context {
 public:
  explicit Context(const GlobalFlags& flags);

  const KvConfig& config() const { return config_; }
  OutputFormat format() const { return format_; }
  int runs() const;
  std::uint64_t seed() const;
  double temperature() const;
  int max_output() const;
  std::string model_id() const;
  std::filesystem::path runs_dir() const;

  const Taxonomy& taxonomy();
  // Throws Error when the taxonomy has no catalog.
  const Catalog& catalog();
  bool has_catalog();
  tasks::TaskConfig task_config() const;

  std::shared_ptr<llm::Provider> make_provider() const;
  llm::Gateway make_gateway() const;

 private:
  KvConfig config_;
  OutputFormat format_ = OutputFormat::kJson;
  std::optional<Taxonomy> taxonomy_;
  std::optional<Catalog> catalog_;
  bool catalog_loaded_ = false;
};

void register_pipeline_commands(CLI::App& app, const GlobalFlags& flags, int& status);
void register_report_commands(CLI::App& app, const GlobalFlags& flags, int& status);

}  // namespace narrframe::cli
