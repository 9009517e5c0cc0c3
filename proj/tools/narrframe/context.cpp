#include "context.hpp"

#include <fmt/format.h>

#include "narrframe/error.hpp"
#include "narrframe/llm/http_provider.hpp"
#include "narrframe/llm/replay_provider.hpp"
#include "narrframe/text.hpp"
#include "narrframe/vocab.hpp"

namespace narrframe::cli {

void add_global_flags(CLI::App& app, GlobalFlags& f) {
  app.add_option("--config", f.config_file, "Configuration file (key = value)");
  app.add_option("--cache-dir", f.cache_dir, "Completion cache root");
  app.add_option("--provider", f.provider, "Provider name: replay or a section of the providers file");
  app.add_option("--replay", f.replay, "Recorded archive directory for the replay provider");
  app.add_option("--model", f.model, "Model id sent to the provider");
  app.add_option("--runs", f.runs, "Runs per task")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "Seed for few-shot sampling");
  app.add_option("--max-in-flight", f.max_in_flight, "Concurrent provider requests")->check(CLI::PositiveNumber);
  app.add_option("--taxonomy", f.taxonomy, "Taxonomy file, or climate / covid for the built-ins");
  app.add_option("--catalog", f.catalog, "Frame catalog file");
  app.add_option("--topic", f.topic, "Topic substituted into prompts");
  app.add_option("--format", f.format, "Tabular output format")->check(CLI::IsMember({"json", "csv"}));
}

namespace {

constexpr const char* kDefaults = R"(provider = replay
cache_dir = cache
runs_dir = runs
runs = 1
seed = 13
max_in_flight = 4
max_retries = 3
backoff_ms = 500
temperature = 0
max_output = 1024
taxonomy =
catalog =
prompts_dir =
topic = climate change
exclude_stories = FATALIST
hvv_mode = joint
providers = config/providers.conf
model =
)";

}  // namespace

Context::Context(const GlobalFlags& f) {
  config_ = KvConfig::parse(kDefaults, "<defaults>");
  if (!f.config_file.empty()) {
    for (const auto& [k, v] : KvConfig::load(f.config_file).values()) config_.set(k, v);
  }
  config_.apply_env_overrides("NARRFRAME_");
  auto flag = [&](const char* key, const std::string& v) {
    if (!v.empty()) config_.set(key, v);
  };
  flag("cache_dir", f.cache_dir);
  flag("provider", f.provider);
  flag("replay", f.replay);
  flag("model", f.model);
  flag("taxonomy", f.taxonomy);
  flag("catalog", f.catalog);
  flag("topic", f.topic);
  if (f.runs) config_.set("runs", std::to_string(*f.runs));
  if (f.seed) config_.set("seed", std::to_string(*f.seed));
  if (f.max_in_flight) config_.set("max_in_flight", std::to_string(*f.max_in_flight));
  if (!f.replay.empty() && f.provider.empty()) config_.set("provider", "replay");
  format_ = f.format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
}

int Context::runs() const { return static_cast<int>(config_.get_int("runs", 1)); }
std::uint64_t Context::seed() const { return static_cast<std::uint64_t>(config_.get_int("seed", 13)); }
double Context::temperature() const { return config_.get_double("temperature", 0.0); }
int Context::max_output() const { return static_cast<int>(config_.get_int("max_output", 1024)); }
std::filesystem::path Context::runs_dir() const { return config_.get_or("runs_dir", "runs"); }

std::string Context::model_id() const {
  auto model = config_.get_or("model", "");
  if (!model.empty()) return model;
  const auto provider = config_.get_or("provider", "replay");
  if (provider == "replay") return "default";
  auto configs = llm::parse_provider_configs(KvConfig::load(config_.get_or("providers", "config/providers.conf")));
  auto it = configs.find(provider);
  return it == configs.end() ? std::string("default") : it->second.model;
}

const Taxonomy& Context::taxonomy() {
  if (!taxonomy_) {
    const auto t = config_.get_or("taxonomy", "");
    if (t.empty() || t == "climate") {
      taxonomy_ = climate_taxonomy();
    } else if (t == "covid" || t == "covid-19") {
      taxonomy_ = covid_taxonomy();
    } else {
      taxonomy_ = load_taxonomy(t);
    }
  }
  return *taxonomy_;
}

bool Context::has_catalog() {
  if (!catalog_loaded_) {
    catalog_loaded_ = true;
    const auto c = config_.get_or("catalog", "");
    if (!c.empty()) {
      catalog_ = load_catalog_file(c, taxonomy());
    } else if (taxonomy().name() == "climate") {
      catalog_ = climate_catalog();
    }
  }
  return catalog_.has_value();
}

const Catalog& Context::catalog() {
  if (!has_catalog()) throw Error("taxonomy '" + taxonomy().name() + "' has no frame catalog; pass --catalog");
  return *catalog_;
}

tasks::TaskConfig Context::task_config() const {
  tasks::TaskConfig c;
  c.topic = config_.get_or("topic", "climate change");
  c.excluded_stories.clear();
  for (const auto& s : text::split(config_.get_or("exclude_stories", ""), ',')) {
    if (text::trim(s).empty()) continue;
    auto story = story_from_token(text::canonical_token(s));
    if (!story) throw ValidationError("config exclude_stories", {"unknown story '" + s + "'"});
    c.excluded_stories.push_back(*story);
  }
  const auto mode = config_.get_or("hvv_mode", "joint");
  if (mode != "joint" && mode != "split") throw ValidationError("config hvv_mode", {"expected joint or split"});
  c.hvv_mode = mode == "split" ? tasks::HvvMode::kSplit : tasks::HvvMode::kJoint;
  const auto dir = config_.get_or("prompts_dir", "");
  c.templates = dir.empty() ? tasks::PromptTemplates::builtin() : tasks::PromptTemplates::load(dir);
  return c;
}

std::shared_ptr<llm::Provider> Context::make_provider() const {
  const auto name = config_.get_or("provider", "replay");
  if (name == "replay") {
    const auto archive = config_.get_or("replay", "");
    if (archive.empty()) throw ValidationError("provider replay", {"--replay <archive> is required"});
    return std::make_shared<llm::ReplayProvider>(archive, config_.get_bool("replay_deterministic", true));
  }
  const auto file = config_.get_or("providers", "config/providers.conf");
  auto configs = llm::parse_provider_configs(KvConfig::load(file));
  auto it = configs.find(name);
  if (it == configs.end()) throw ValidationError("provider", {fmt::format("'{}' is not defined in {}", name, file)});
  return std::make_shared<llm::HttpProvider>(it->second);
}

llm::Gateway Context::make_gateway() const {
  llm::GatewayOptions o;
  // Replay archives are already a cache; copying them would only duplicate files.
  if (config_.get_or("provider", "replay") != "replay") o.cache_dir = config_.get_or("cache_dir", "cache");
  o.max_retries = static_cast<int>(config_.get_int("max_retries", 3));
  o.backoff = std::chrono::milliseconds(config_.get_int("backoff_ms", 500));
  o.max_in_flight = static_cast<std::size_t>(config_.get_int("max_in_flight", 4));
  return llm::Gateway(make_provider(), o);
}

}  // namespace narrframe::cli
