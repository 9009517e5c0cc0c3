// ingest, predict, record, match, bootstrap, catalog-validate
#include <fstream>
#include <iostream>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "context.hpp"
#include "narrframe/bootstrap.hpp"
#include "narrframe/corpus.hpp"
#include "narrframe/error.hpp"
#include "narrframe/labels.hpp"
#include "narrframe/matcher.hpp"
#include "narrframe/report.hpp"
#include "narrframe/tasks/runner.hpp"
#include "narrframe/text.hpp"

namespace narrframe::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::vector<tasks::TaskId> parse_tasks(const std::vector<std::string>& names) {
  std::vector<tasks::TaskId> out;
  for (const auto& n : names) {
    if (n == "all") return {tasks::kAllTasks.begin(), tasks::kAllTasks.end()};
    auto t = tasks::task_from_string(n);
    if (!t) throw ValidationError("--task", {"unknown task '" + n + "'"});
    out.push_back(*t);
  }
  return out;
}

FieldMapping load_mapping(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open field mapping " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return FieldMapping::parse(text, path);
}

// ---- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string input;
  std::string mapping;
  std::string output = "-";
};

int run_ingest(Context& ctx, const IngestArgs& a) {
  const auto corpus = load_corpus(a.input, ctx.taxonomy(), load_mapping(a.mapping));
  std::size_t gold = 0;
  std::size_t narratives = 0;
  for (const auto& r : corpus) {
    gold += r.gold.has_value();
    narratives += r.gold_narrative.has_value();
  }
  if (a.output == "-") {
    write_corpus(std::cout, corpus);
  } else {
    save_corpus(a.output, corpus);
  }
  std::cerr << fmt::format("ingested {} articles ({} with gold components, {} with gold narratives)\n",
                           corpus.size(), gold, narratives);
  return kExitOk;
}

// ---- predict / record -----------------------------------------------------

struct PredictArgs {
  std::string corpus;
  std::vector<std::string> tasks{"all"};
  std::string runs_dir;
  std::string labels = "gold";
  std::size_t few_shot = 0;
  std::string hvv_mode;
};

tasks::RunOptions run_options(const Context& ctx) {
  tasks::RunOptions o;
  o.runs = ctx.runs();
  o.model_id = ctx.model_id();
  o.temperature = ctx.temperature();
  o.max_output = ctx.max_output();
  o.seed = ctx.seed();
  return o;
}

int run_predict(Context& ctx, const PredictArgs& a) {
  const auto corpus = load_corpus(a.corpus, ctx.taxonomy());
  auto config = ctx.task_config();
  if (!a.hvv_mode.empty()) config.hvv_mode = a.hvv_mode == "split" ? tasks::HvvMode::kSplit : tasks::HvvMode::kJoint;
  const auto root = a.runs_dir.empty() ? ctx.runs_dir() : std::filesystem::path(a.runs_dir);
  auto gateway = ctx.make_gateway();
  auto options = run_options(ctx);
  options.few_shot = a.few_shot;

  bool provider_failures = false;
  for (auto task : parse_tasks(a.tasks)) {
    const Catalog* catalog = tasks::is_narrative(task) ? &ctx.catalog() : nullptr;
    const auto spec = tasks::build_task_spec(task, ctx.taxonomy(), catalog, config);
    tasks::StructureLabelMap chained;
    auto task_options = options;
    if (task == tasks::TaskId::kNarrativeStructured && a.labels == "predicted") {
      // Chains the run-0 component predictions of the same provider.
      auto load = [&](tasks::TaskId t) {
        return tasks::load_predictions(tasks::prediction_path(root, gateway.provider().name(), t, 0), t);
      };
      chained = tasks::structure_labels_from_predictions(load(tasks::TaskId::kHero), load(tasks::TaskId::kVillain),
                                                         load(tasks::TaskId::kVictim), load(tasks::TaskId::kFocus));
      task_options.structure_labels = &chained;
    }
    for (const auto& set : tasks::run_task(spec, corpus, gateway, task_options)) {
      tasks::save_predictions(root, set);
      std::size_t gateway_failures = 0;
      for (const auto& e : set.entries) {
        if (e.failure && e.failure->rfind("GatewayError", 0) == 0) ++gateway_failures;
      }
      provider_failures |= gateway_failures > 0;
      std::cerr << fmt::format("{:<22} run {}: {} entries, {} failures ({} from the provider) -> {}\n",
                               tasks::to_string(task), set.run_index, set.entries.size(), set.failures(),
                               gateway_failures,
                               tasks::prediction_path(root, set.provider, task, set.run_index).string());
    }
  }
  std::cerr << fmt::format("provider calls: {}\n", gateway.live_calls());
  return provider_failures ? kExitProvider : kExitOk;
}

int run_record(Context& ctx, const PredictArgs& a) {
  const auto corpus = load_corpus(a.corpus, ctx.taxonomy());
  const auto config = ctx.task_config();
  std::vector<tasks::TaskSpec> specs;
  for (auto task : parse_tasks(a.tasks)) {
    const Catalog* catalog = tasks::is_narrative(task) ? &ctx.catalog() : nullptr;
    specs.push_back(tasks::build_task_spec(task, ctx.taxonomy(), catalog, config));
  }
  auto gateway = ctx.make_gateway();
  const auto s = tasks::record_session(corpus, specs, gateway, run_options(ctx));
  ordered_json out{{"requests", s.requests}, {"distinct_fingerprints", s.distinct},
                   {"failed", s.failed},     {"live_calls", s.live_calls}};
  std::cout << out.dump(2) << "\n";
  return s.failed > 0 ? kExitProvider : kExitOk;
}

// ---- match ----------------------------------------------------------------

struct MatchArgs {
  std::string corpus;
  bool use_gold = false;
  std::string pred_dir;
  int run = 0;
  std::string output = "-";
};

ordered_json match_json(const std::string& id, const NarrativeStructure& s, const MatchResult& m,
                        const std::vector<StructureViolation>& violations) {
  ordered_json slots = ordered_json::object();
  for (auto slot : kAllSlots) {
    auto label = slot_label(s, slot);
    slots[std::string(to_string(slot))] = label.empty() ? ordered_json(nullptr) : ordered_json(label);
  }
  ordered_json cands = ordered_json::array();
  for (const auto& c : m.candidates) {
    ordered_json trace = ordered_json::object();
    for (std::size_t i = 0; i < kAllSlots.size(); ++i) {
      trace[std::string(to_string(kAllSlots[i]))] = std::string(to_string(c.slot_trace[i]));
    }
    cands.push_back({{"frame", c.frame_id}, {"specificity", c.specificity}, {"slots", trace}});
  }
  ordered_json v = ordered_json::array();
  for (auto x : violations) v.push_back(std::string(to_string(x)));
  ordered_json out{{"article_id", id},
                   {"structure", slots},
                   {"verdict", std::string(to_string(m.verdict))},
                   {"frame", m.verdict == Verdict::kUnique ? ordered_json(m.candidates.front().frame_id)
                                                           : ordered_json(nullptr)},
                   {"partial", m.partial},
                   {"candidates", cands}};
  if (!violations.empty()) out["violations"] = v;
  return out;
}

int run_match(Context& ctx, const MatchArgs& a) {
  const auto corpus = load_corpus(a.corpus, ctx.taxonomy());
  const Matcher matcher(ctx.catalog());

  std::map<std::string, NarrativeStructure> structures;
  if (a.use_gold) {
    for (const auto& r : corpus) {
      if (r.gold) structures.emplace(r.id, *r.gold);
    }
  } else {
    for (auto task : {tasks::TaskId::kHero, tasks::TaskId::kVillain, tasks::TaskId::kVictim, tasks::TaskId::kFocus,
                      tasks::TaskId::kConflict, tasks::TaskId::kStory}) {
      const auto path = std::filesystem::path(a.pred_dir) / std::string(tasks::to_string(task)) /
                        ("run" + std::to_string(a.run) + ".jsonl");
      if (!std::filesystem::exists(path)) continue;
      const auto slot = *tasks::task_slot(task);
      for (const auto& e : tasks::load_predictions(path, task).entries) {
        auto& s = structures[e.article_id];
        if (!e.label) continue;
        assign(s, slot, parse_label(slot, *e.label, ctx.taxonomy()));
      }
    }
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (a.output != "-") {
    file.open(a.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write " + a.output);
    out = &file;
  }
  const auto mode = a.use_gold ? MatchMode::kGold : MatchMode::kPredicted;
  const auto vmode = a.use_gold ? StructureMode::kGold : StructureMode::kPredicted;
  std::map<std::string, std::size_t> verdicts{{"UNIQUE", 0}, {"TIED", 0}, {"NO_MATCH", 0}};
  std::size_t with_gold_narrative = 0;
  std::size_t agree = 0;
  std::size_t skipped = 0;
  for (const auto& r : corpus) {
    auto it = structures.find(r.id);
    if (it == structures.end()) {
      ++skipped;
      continue;
    }
    const auto m = matcher.match(it->second, mode);
    auto line = match_json(r.id, it->second, m, validate_structure(it->second, vmode));
    if (r.gold_narrative) {
      line["gold_narrative"] = *r.gold_narrative;
      ++with_gold_narrative;
      if (m.verdict == Verdict::kUnique && m.candidates.front().frame_id == *r.gold_narrative) ++agree;
    }
    *out << line.dump() << "\n";
    ++verdicts[std::string(to_string(m.verdict))];
  }
  if (ctx.format() == OutputFormat::kCsv) {
    std::cerr << "verdict,count\n";
    for (const auto& v : {"UNIQUE", "TIED", "NO_MATCH"}) std::cerr << v << "," << verdicts[v] << "\n";
  } else {
    std::cerr << fmt::format("UNIQUE {}  TIED {}  NO_MATCH {}  (skipped {} without a structure)\n", verdicts["UNIQUE"],
                             verdicts["TIED"], verdicts["NO_MATCH"], skipped);
  }
  if (with_gold_narrative > 0) {
    std::cerr << fmt::format("unique match equals gold narrative: {}/{}\n", agree, with_gold_narrative);
  }
  return kExitOk;
}

// ---- bootstrap ------------------------------------------------------------

struct BootstrapArgs {
  std::string corpus;
  std::string out_dir;
  std::string topic = "COVID-19";
};

int run_bootstrap(Context& ctx, const BootstrapArgs& a) {
  bootstrap::BootstrapConfig config;
  config.topic = a.topic;
  config.model_id = ctx.model_id();
  config.max_output = ctx.max_output();
  config.templates = ctx.task_config().templates;
  // Speeches carry no gold labels, so any taxonomy parses them.
  const auto documents = load_corpus(a.corpus, ctx.taxonomy());
  auto gateway = ctx.make_gateway();

  const auto extractions = bootstrap::extract_candidates(documents, gateway, config);
  ordered_json per_doc = ordered_json::array();
  std::size_t failed = 0;
  for (const auto& e : extractions) {
    ordered_json item{{"document_id", e.document_id}, {"fingerprint", e.fingerprint}};
    if (e.candidates) {
      item["heroes"] = e.candidates->heroes;
      item["villains"] = e.candidates->villains;
      item["victims"] = e.candidates->victims;
    } else {
      ++failed;
      item["failure"] = e.failure ? e.failure->describe() : "unknown";
      std::cerr << fmt::format("skipping {}: {}\n", e.document_id, item["failure"].get<std::string>());
    }
    per_doc.push_back(std::move(item));
  }
  const auto merged = bootstrap::merge_candidates(extractions);
  const auto taxonomy = bootstrap::cluster_stakeholders(merged, gateway, config);

  const std::filesystem::path out(a.out_dir);
  ordered_json candidates{{"documents", per_doc}, {"merged", merged}};
  report::write_file(out / "candidates.json", candidates.dump(2) + "\n");
  const auto tax_path = out / (taxonomy.name() + ".tax");
  report::write_file(tax_path, render_taxonomy(taxonomy));
  auto base = ctx.task_config();
  for (const auto& spec : bootstrap::transfer_tasks(taxonomy, config.topic, base)) {
    report::write_file(out / "tasks" / (std::string(tasks::to_string(spec.task_id)) + ".json"),
                       tasks::task_spec_to_json(spec) + "\n");
  }
  std::cerr << fmt::format("{} documents ({} skipped), {} merged candidates, {} stakeholder classes -> {}\n",
                           documents.size(), failed, merged.size(), taxonomy.size(), tax_path.string());
  return kExitOk;
}

// ---- catalog-validate -----------------------------------------------------

struct CatalogArgs {
  bool enumerate = false;
};

int run_catalog_validate(Context& ctx, const CatalogArgs& a) {
  const auto file = ctx.config().get_or("catalog", "");
  const auto catalog = file.empty() ? climate_catalog() : parse_catalog([&] {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open catalog " + file);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  }(), ctx.taxonomy(), file);
  const auto violations = validate_catalog(catalog);
  ordered_json out{{"frames", catalog.size()}, {"taxonomy", catalog.taxonomy().name()}};
  ordered_json v = ordered_json::array();
  for (const auto& x : violations) v.push_back(x.describe());
  out["violations"] = v;
  if (a.enumerate) {
    EnumerationOptions opts;
    opts.keep_table = false;
    const auto r = enumerate_matches(catalog, {}, opts);
    ordered_json per_frame = ordered_json::object();
    for (std::size_t i = 0; i < catalog.size(); ++i) per_frame[catalog.frames()[i].frame_id] = r.unique_per_frame[i];
    ordered_json ties = ordered_json::array();
    for (const auto& [group, n] : r.tied_groups) ties.push_back({{"frames", group}, {"structures", n}});
    out["enumeration"] = {{"structures", r.structures}, {"unique", r.unique},      {"tied", r.tied},
                          {"no_match", r.no_match},     {"unique_per_frame", per_frame}, {"tied_groups", ties}};
  }
  if (ctx.format() == OutputFormat::kCsv) {
    std::cout << "violation\n";
    for (const auto& x : violations) std::cout << report::csv_escape(x.describe()) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return violations.empty() ? kExitOk : kExitValidation;
}

template <typename Args, typename Fn>
void bind(CLI::App* sub, const GlobalFlags& flags, int& status, std::shared_ptr<Args> args, Fn fn) {
  sub->callback([&flags, &status, args, fn] {
    Context ctx(flags);
    status = fn(ctx, *args);
  });
}

}  // namespace

void register_pipeline_commands(CLI::App& app, const GlobalFlags& flags, int& status) {
  {
    auto args = std::make_shared<IngestArgs>();
    auto* sub = app.add_subcommand("ingest", "Validate and normalize a JSON-lines corpus");
    sub->add_option("--input", args->input, "Corpus in JSON lines")->required();
    sub->add_option("--mapping", args->mapping, "Field mapping file (field = source key)");
    sub->add_option("-o,--output", args->output, "Normalized corpus ('-' for stdout)");
    bind(sub, flags, status, args, run_ingest);
  }
  for (const char* name : {"predict", "record"}) {
    auto args = std::make_shared<PredictArgs>();
    const bool predict = std::string_view(name) == "predict";
    auto* sub = app.add_subcommand(name, predict ? "Run prediction tasks and write prediction archives"
                                                 : "Fill the completion cache for every (article, task, run)");
    sub->add_option("--corpus", args->corpus, "Corpus in JSON lines")->required();
    sub->add_option("--task", args->tasks, "Task name or 'all' (repeatable)");
    sub->add_option("--labels", args->labels, "Structure labels for narrative_structured")
        ->check(CLI::IsMember({"gold", "predicted"}));
    sub->add_option("--few-shot", args->few_shot, "Labelled examples per prompt");
    sub->add_option("--hvv-mode", args->hvv_mode, "joint or split role prompts")
        ->check(CLI::IsMember({"joint", "split"}));
    if (predict) {
      sub->add_option("--runs-dir", args->runs_dir, "Prediction archive root");
      bind(sub, flags, status, args, run_predict);
    } else {
      bind(sub, flags, status, args, run_record);
    }
  }
  {
    auto args = std::make_shared<MatchArgs>();
    auto* sub = app.add_subcommand("match", "Map component structures to catalog frames");
    sub->add_option("--corpus", args->corpus, "Corpus in JSON lines")->required();
    auto* source = sub->add_option_group("source", "Which structures to match");
    source->add_flag("--use-gold", args->use_gold, "Match gold structures");
    source->add_option("--pred-dir", args->pred_dir, "Prediction root of one provider (runs/<provider>)");
    source->require_option(1);
    sub->add_option("--run", args->run, "Run index of the predictions");
    sub->add_option("-o,--output", args->output, "Verdict stream ('-' for stdout)");
    bind(sub, flags, status, args, run_match);
  }
  {
    auto args = std::make_shared<BootstrapArgs>();
    auto* sub = app.add_subcommand("bootstrap", "Derive a stakeholder taxonomy for a new domain");
    sub->add_option("--corpus", args->corpus, "Speech corpus in JSON lines")->required();
    sub->add_option("--out-dir", args->out_dir, "Output directory")->required();
    sub->add_option("--topic", args->topic, "Topic of the new domain");
    bind(sub, flags, status, args, run_bootstrap);
  }
  {
    auto args = std::make_shared<CatalogArgs>();
    auto* sub = app.add_subcommand("catalog-validate", "Check a frame catalog");
    sub->add_flag("--enumerate", args->enumerate, "Also enumerate the whole structure space");
    bind(sub, flags, status, args, run_catalog_validate);
  }
}

}  // namespace narrframe::cli
