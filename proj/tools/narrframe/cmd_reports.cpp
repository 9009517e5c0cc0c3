// eval, agree, analyze
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "context.hpp"
#include "narrframe/analysis.hpp"
#include "narrframe/corpus.hpp"
#include "narrframe/error.hpp"
#include "narrframe/matcher.hpp"
#include "narrframe/metrics/agreement.hpp"
#include "narrframe/metrics/classification.hpp"
#include "narrframe/metrics/run_summary.hpp"
#include "narrframe/report.hpp"
#include "narrframe/tasks/runner.hpp"

namespace narrframe::cli {

using nlohmann::ordered_json;

namespace {

// nullopt selects the narrative label.
std::optional<Slot> slot_for_name(std::string_view name) {
  if (name == "narrative" || name == "narrative_structured") return std::nullopt;
  if (auto slot = slot_from_string(name)) return slot;
  throw ValidationError("--slot", {"unknown slot '" + std::string(name) + "'"});
}

const Catalog* optional_catalog(Context& ctx) { return ctx.has_catalog() ? &ctx.catalog() : nullptr; }

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string task;
  std::string gold;
  std::string pred;
  std::string out_dir;
  std::string absent = "zero";
  bool baseline = false;
};

std::vector<tasks::PredictionSet> load_runs(const std::filesystem::path& pred, tasks::TaskId task) {
  if (std::filesystem::is_directory(pred)) {
    auto runs = tasks::load_prediction_runs(pred, task);
    if (runs.empty()) throw Error("no run<k>.jsonl files in " + pred.string());
    return runs;
  }
  return {tasks::load_predictions(pred, task)};
}

int run_eval(Context& ctx, const EvalArgs& a) {
  const auto task = tasks::task_from_string(a.task);
  if (!task) throw ValidationError("--task", {"unknown task '" + a.task + "'"});
  const auto corpus = load_corpus(a.gold, ctx.taxonomy());
  const auto slot = tasks::task_slot(*task);
  const Catalog* catalog = tasks::is_narrative(*task) ? &ctx.catalog() : nullptr;
  const auto spec = tasks::build_task_spec(*task, ctx.taxonomy(), catalog, ctx.task_config());
  const auto gold_map = analysis::gold_labels(corpus, slot);
  if (gold_map.empty()) throw Error("no gold labels for task " + a.task + " in " + a.gold);

  std::vector<std::string> classes = spec.label_space;
  if (spec.allows_none) {
    for (const auto& [id, label] : gold_map) {
      if (label == "NONE") {
        classes.push_back("NONE");
        break;
      }
    }
  }
  const std::set<std::string, std::less<>> known(classes.begin(), classes.end());

  // Gold labels outside the task's label space (excluded stories) are not scored.
  std::vector<std::string> ids;
  std::vector<std::string> gold;
  std::size_t out_of_space = 0;
  for (const auto& r : corpus) {
    auto it = gold_map.find(r.id);
    if (it == gold_map.end()) continue;
    if (!known.contains(it->second)) {
      ++out_of_space;
      continue;
    }
    ids.push_back(r.id);
    gold.push_back(it->second);
  }

  const auto policy = a.absent == "exclude" ? metrics::AbsentClassPolicy::kExclude : metrics::AbsentClassPolicy::kZeroFill;
  const std::filesystem::path out(a.out_dir);
  ordered_json runs = ordered_json::array();
  std::vector<double> scores;
  for (const auto& set : load_runs(a.pred, *task)) {
    std::vector<std::string> pred;
    pred.reserve(ids.size());
    std::size_t missing = 0;
    for (const auto& id : ids) {
      const auto* e = set.find(id);
      if (e == nullptr) ++missing;
      pred.push_back(e != nullptr && e->label ? *e->label : std::string(metrics::kFailedLabel));
    }
    const auto r = metrics::classification_report(gold, pred, classes, policy);
    const auto m = metrics::confusion(gold, pred, classes);
    scores.push_back(r.macro_f1);
    if (!a.out_dir.empty()) {
      const auto stem = fmt::format("{}_run{}", a.task, set.run_index);
      report::write_file(out / (stem + "_per_class.csv"), report::per_class_csv(r));
      report::write_file(out / (stem + "_confusion.csv"), report::confusion_csv(m));
      report::write_file(out / (stem + "_confusion.svg"),
                         report::confusion_svg(fmt::format("{} run {}", a.task, set.run_index), m));
    }
    runs.push_back({{"run", set.run_index},
                    {"macro_f1", r.macro_f1},
                    {"accuracy", r.accuracy},
                    {"items", r.items},
                    {"failed", r.failed},
                    {"missing", missing}});
  }
  const auto summary = metrics::summarize_runs(scores);
  ordered_json out_json{{"task", a.task},
                        {"classes", classes},
                        {"absent_policy", a.absent},
                        {"items", ids.size()},
                        {"excluded_gold", out_of_space},
                        {"runs", runs},
                        {"summary",
                         {{"runs", summary.runs},
                          {"mean_macro_f1", summary.mean},
                          {"stddev", summary.stddev},
                          {"min", summary.min},
                          {"max", summary.max},
                          {"variance_flag", std::string(to_string(summary.flag))}}}};
  if (a.baseline) {
    const auto base = metrics::most_frequent_baseline(gold, classes);
    out_json["baseline_macro_f1"] = metrics::macro_f1(gold, base, classes, policy);
    out_json["baseline_label"] = base.empty() ? ordered_json(nullptr) : ordered_json(base.front());
  }
  if (!a.out_dir.empty()) report::write_file(out / (a.task + "_summary.json"), out_json.dump(2) + "\n");

  if (ctx.format() == OutputFormat::kCsv) {
    std::cout << "task,run,macro_f1,accuracy,items,failed\n";
    for (const auto& r : runs) {
      std::cout << fmt::format("{},{},{},{},{},{}\n", a.task, r["run"].get<int>(),
                               report::format_double(r["macro_f1"].get<double>()),
                               report::format_double(r["accuracy"].get<double>()), r["items"].get<std::size_t>(),
                               r["failed"].get<std::size_t>());
    }
  } else {
    std::cout << out_json.dump(2) << "\n";
  }
  return kExitOk;
}

// ---- agree ----------------------------------------------------------------

struct AgreeArgs {
  std::string annotations;
  std::string slot;
  std::string expert;
  std::string adjudicated;
};

int run_agree(Context& ctx, const AgreeArgs& a) {
  const auto slot = slot_for_name(a.slot);
  if (!slot) throw ValidationError("--slot", {"agreement is computed per component slot"});
  auto records = load_annotations(a.annotations, ctx.taxonomy());
  std::erase_if(records, [&](const AnnotationRecord& r) { return r.slot != *slot; });
  if (records.empty()) throw Error("no annotations for slot " + a.slot);

  const auto table = metrics::AgreementTable::from_annotations(records, *slot);
  auto classes = analysis::class_order(slot, ctx.taxonomy(), optional_catalog(ctx));
  {
    std::set<std::string> extra;
    for (const auto& r : records) {
      if (std::find(classes.begin(), classes.end(), r.label) == classes.end()) extra.insert(r.label);
    }
    classes.insert(classes.end(), extra.begin(), extra.end());
  }

  ordered_json out{{"slot", a.slot},
                   {"items", table.items.size()},
                   {"annotators", table.annotators},
                   {"pairable_values", table.pairable_values()}};
  try {
    out["krippendorff_alpha"] = metrics::krippendorff_alpha(table);
  } catch (const metrics::MetricError& e) {
    out["krippendorff_alpha"] = nullptr;
    out["alpha_error"] = e.what();
  }
  if (!a.expert.empty()) {
    if (!table.annotator_index(a.expert)) throw ValidationError("--expert", {"no annotator '" + a.expert + "'"});
    const auto ref = metrics::agreement_with_reference(table, a.expert, classes);
    ordered_json pairs = ordered_json::array();
    for (const auto& p : ref.pairs) {
      pairs.push_back({{"annotator", p.annotator}, {"items", p.items}, {"rate", p.rate}, {"kappa", p.kappa},
                       {"ac1", p.ac1}});
    }
    out["expert"] = {{"reference", ref.reference},
                     {"pairs", pairs},
                     {"mean_rate", ref.mean_rate},
                     {"mean_kappa", ref.mean_kappa},
                     {"mean_ac1", ref.mean_ac1}};
  }

  if (!a.adjudicated.empty()) {
    std::map<std::string, std::vector<AnnotationRecord>> by_article;
    std::vector<std::string> order;
    for (const auto& r : records) {
      auto [it, inserted] = by_article.try_emplace(r.article_id);
      if (inserted) order.push_back(r.article_id);
      it->second.push_back(r);
    }
    std::string lines;
    std::size_t ties = 0;
    std::size_t unresolved = 0;
    for (const auto& id : order) {
      const auto adj = adjudicate(by_article[id], *slot,
                                  a.expert.empty() ? std::nullopt : std::optional<std::string_view>(a.expert));
      ties += adj.tie;
      unresolved += !adj.resolved;
      ordered_json line{{"article_id", id},   {"slot", a.slot},         {"label", adj.label},
                        {"support", adj.support}, {"tie", adj.tie}, {"resolved", adj.resolved}};
      if (adj.tie) line["tied_labels"] = adj.tied_labels;
      lines += line.dump() + "\n";
    }
    report::write_file(a.adjudicated, lines);
    out["adjudication"] = {{"articles", order.size()}, {"ties", ties}, {"unresolved", unresolved}};
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string corpus;
  std::vector<std::string> slots;
  std::vector<std::string> by;
  bool intersection = false;
  std::string out_dir;
};

int run_analyze(Context& ctx, const AnalyzeArgs& a) {
  const auto corpus = load_corpus(a.corpus, ctx.taxonomy());
  const std::filesystem::path out(a.out_dir);
  const Catalog* catalog = optional_catalog(ctx);
  std::vector<analysis::MetadataField> fields;
  for (const auto& b : a.by) {
    auto f = analysis::metadata_field_from_string(b);
    if (!f) throw analysis::UnknownMetadataField(b);
    fields.push_back(*f);
  }

  ordered_json written = ordered_json::array();
  auto emit = [&](const std::string& name, const std::string& content) {
    report::write_file(out / name, content);
    written.push_back(name);
  };
  ordered_json tables = ordered_json::object();
  for (const auto& name : a.slots) {
    const auto slot = slot_for_name(name);
    const auto labels = analysis::gold_labels(corpus, slot);
    const auto classes = analysis::class_order(slot, ctx.taxonomy(), catalog);
    const auto freq = analysis::distribution(corpus, labels, classes);
    emit(fmt::format("{}_distribution.csv", name), report::frequency_csv(freq));
    ordered_json counts = ordered_json::object();
    for (std::size_t i = 0; i < freq.classes.size(); ++i) counts[freq.classes[i]] = freq.counts[i];
    tables[name] = {{"total", freq.total}, {"unlabeled", freq.unlabeled}, {"counts", counts}};
    for (auto field : fields) {
      const auto t = analysis::crosstab(corpus, labels, classes, field);
      const auto stem = fmt::format("{}_by_{}", name, analysis::to_string(field));
      emit(stem + ".csv", report::contingency_csv(t));
      emit(stem + "_matrix.csv", report::contingency_matrix_csv(t));
      emit(stem + "_heatmap.svg", report::heatmap_svg(stem, t.rows, t.columns, t.counts));
      emit(stem + "_stacked.svg", report::stacked_bar_svg(stem, t));
      tables[name]["by_" + std::string(analysis::to_string(field))] = {{"total", t.total}, {"excluded", t.excluded}};
    }
  }
  if (a.intersection) {
    const auto labels = analysis::gold_labels(corpus, std::nullopt);
    const auto order = analysis::class_order(std::nullopt, ctx.taxonomy(), catalog);
    const auto t = analysis::frame_intersection(corpus, labels, order);
    emit("narrative_by_generic_frame.csv", report::intersection_csv(t));
    emit("narrative_by_generic_frame.svg",
         report::heatmap_svg("narrative by generic frame", t.narratives, t.generic_frames, t.counts));
    tables["intersection"] = {{"total", t.total}, {"skipped", t.skipped}};
  }
  std::cout << ordered_json{{"tables", tables}, {"files", written}}.dump(2) << "\n";
  return kExitOk;
}

template <typename Args, typename Fn>
void bind(CLI::App* sub, const GlobalFlags& flags, int& status, std::shared_ptr<Args> args, Fn fn) {
  sub->callback([&flags, &status, args, fn] {
    Context ctx(flags);
    status = fn(ctx, *args);
  });
}

}  // namespace

void register_report_commands(CLI::App& app, const GlobalFlags& flags, int& status) {
  {
    auto args = std::make_shared<EvalArgs>();
    auto* sub = app.add_subcommand("eval", "Score predictions against gold labels");
    sub->add_option("--task", args->task, "Task name")->required();
    sub->add_option("--gold", args->gold, "Corpus with gold labels")->required();
    sub->add_option("--pred", args->pred, "Prediction file or task directory of run<k>.jsonl")->required();
    sub->add_option("--out-dir", args->out_dir, "Directory for CSV/SVG outputs");
    sub->add_option("--absent", args->absent, "Classes absent from gold and predictions")
        ->check(CLI::IsMember({"zero", "exclude"}));
    sub->add_flag("--baseline", args->baseline, "Also score the most-frequent-class baseline");
    bind(sub, flags, status, args, run_eval);
  }
  {
    auto args = std::make_shared<AgreeArgs>();
    auto* sub = app.add_subcommand("agree", "Inter-annotator agreement and adjudication");
    sub->add_option("--annotations", args->annotations, "Annotations in JSON lines")->required();
    sub->add_option("--slot", args->slot, "Component slot")->required();
    sub->add_option("--expert", args->expert, "Reference annotator id");
    sub->add_option("--adjudicated", args->adjudicated, "Write majority labels to this JSON-lines file");
    bind(sub, flags, status, args, run_agree);
  }
  {
    auto args = std::make_shared<AnalyzeArgs>();
    auto* sub = app.add_subcommand("analyze", "Label distributions and metadata cross-tabulations");
    sub->add_option("--corpus", args->corpus, "Corpus with gold labels")->required();
    sub->add_option("--slot", args->slots, "Slot or 'narrative' (repeatable)");
    sub->add_option("--by", args->by, "leaning, year or outlet (repeatable)");
    sub->add_flag("--intersection", args->intersection, "Narrative by generic frame table");
    sub->add_option("--out-dir", args->out_dir, "Output directory")->required();
    bind(sub, flags, status, args, run_analyze);
  }
}

}  // namespace narrframe::cli
