#include "fixtures.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "narrframe/bootstrap.hpp"
#include "narrframe/labels.hpp"
#include "narrframe/llm/cache.hpp"
#include "narrframe/llm/gateway.hpp"
#include "narrframe/matcher.hpp"
#include "narrframe/tasks/prompt.hpp"
#include "narrframe/tasks/runner.hpp"
#include "narrframe/text.hpp"
#include "scripted_provider.hpp"

namespace narrframe::fixtures {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kPinnedTimestamp = "2026-01-01T00:00:00Z";

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const std::vector<std::string>& outlets() {
  static const std::vector<std::string> v{"Harbour Gazette", "Valley Courier", "Metro Observer", "Prairie Herald"};
  return v;
}

Stakeholder fill_role(const RoleConstraint& c, const Taxonomy& tax, std::size_t k, bool must_fill) {
  if (!c.any) return Stakeholder(c.admissible[k % c.admissible.size()]);
  if (!must_fill && k % 2 == 0) return Stakeholder::none();
  return Stakeholder(tax.classes()[(k * 5 + 3) % tax.size()].label);
}

std::string article_text(const NarrativeStructure& s, const Taxonomy& tax, std::size_t i) {
  auto who = [&](const Stakeholder& st) -> std::string {
    if (st.is_none()) return "no particular group";
    for (const auto& c : tax.classes()) {
      if (c.label == st.label()) return c.description;
    }
    return st.label();
  };
  return fmt::format(
      "Coverage item {}. The piece credits {} with progress, places responsibility on {}, and describes the "
      "harm borne by {}. Interviews and figures follow in the remaining paragraphs.",
      i, who(s.hero), who(s.villain), who(s.victim));
}

}  // namespace

std::vector<ArticleRecord> climate_corpus() {
  const auto catalog = climate_catalog();
  const auto& tax = catalog.taxonomy();
  std::vector<ArticleRecord> out;
  std::size_t i = 0;
  for (std::size_t round = 0; round < 2; ++round) {
    for (const auto& f : catalog.frames()) {
      NarrativeStructure s;
      const auto focal = focal_slot(f.focus);
      for (auto slot : {Slot::kHero, Slot::kVillain, Slot::kVictim}) {
        s.role(slot) = fill_role(f.role(slot), tax, i + round, slot == focal);
      }
      s.focus = f.focus;
      s.conflict = f.conflict;
      s.story = f.story;
      const auto m = match_structure(s, catalog, MatchMode::kGold);
      if (m.verdict != Verdict::kUnique || m.candidates.front().frame_id != f.frame_id) {
        throw std::logic_error("fixture structure does not select " + f.frame_id + ": " + describe(s));
      }
      ArticleRecord r;
      r.id = fmt::format("clim-{:03}", i);
      r.title = fmt::format("Dispatch {}", i);
      r.text = article_text(s, tax, i);
      r.outlet = outlets()[i % outlets().size()];
      if (i % 7 != 6) r.leaning = kAllLeanings[i % kAllLeanings.size()];
      if (i % 9 != 8) r.year = 2017 + static_cast<int>(i % 5);
      r.gold = s;
      r.gold_narrative = f.frame_id;
      std::set<GenericFrame> g;
      for (std::size_t b = 0; b < kAllGenericFrames.size(); ++b) {
        if (((i * 7 + 3) >> b) & 1U) g.insert(kAllGenericFrames[b]);
      }
      r.generic_frames = std::move(g);
      out.push_back(std::move(r));
      ++i;
    }
  }
  return out;
}

std::vector<AnnotationRecord> climate_annotations() {
  const auto corpus = climate_corpus();
  const auto tax = climate_taxonomy();
  const auto labels = tax.labels();
  std::vector<AnnotationRecord> out;
  for (auto slot : {Slot::kHero, Slot::kVillain, Slot::kStory}) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& a = corpus[i];
      const auto gold = slot_label(*a.gold, slot);
      auto other = [&](std::size_t salt) {
        if (slot == Slot::kStory) return std::string(to_string(kAllStories[(i + salt) % kAllStories.size()]));
        return labels[(i + salt) % labels.size()];
      };
      out.push_back({a.id, "expert", slot, gold});
      out.push_back({a.id, "ann1", slot, i % 5 == 1 ? other(1) : gold});
      out.push_back({a.id, "ann2", slot, i % 4 == 2 ? other(2) : gold});
      if (i % 6 != 3) out.push_back({a.id, "ann3", slot, i % 3 == 0 ? other(3) : gold});
    }
  }
  return out;
}

std::vector<ArticleRecord> covid_speeches() {
  struct Speech {
    const char* id;
    const char* title;
    const char* text;
  };
  static const Speech speeches[] = {
      {"sp-01", "Address to the nation, March",
       "Tonight I speak to every household. Our nurses and doctors are working around the clock, and they need "
       "us to stay home. The virus does not respect borders, and older citizens face the greatest danger."},
      {"sp-02", "Statement on economic support",
       "Shops, farms and factories have closed their doors. The government will guarantee wages, and we will "
       "work with our partners abroad to secure equipment and vaccines."},
      {"sp-03", "Easter message",
       "Churches, mosques and synagogues have moved their services online. I thank the scientists who advise us "
       "and the hospital staff who care for the sick."},
      {"sp-04", "Address on the second wave",
       "Infections are rising again. Regional governments must act quickly, and every citizen must keep their "
       "distance to protect the vulnerable."},
      {"sp-05", "Remarks at the international pledging summit",
       "No country can beat this pandemic alone. Together with the world health bodies we will fund research "
       "and share doses fairly."},
      {"sp-06", "Short statement", "Thank you."},
  };
  std::vector<ArticleRecord> out;
  for (const auto& s : speeches) {
    ArticleRecord r;
    r.id = s.id;
    r.title = s.title;
    r.text = s.text;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

struct ClimateIndex {
  std::vector<ArticleRecord> corpus = climate_corpus();
  Catalog catalog = climate_catalog();
  std::map<std::string, tasks::TaskSpec> by_instructions;

  ClimateIndex() {
    const tasks::TaskConfig config;
    const NarrativeStructure labels = *corpus.front().gold;
    for (auto t : tasks::kAllTasks) {
      const auto spec = tasks::build_task_spec(t, catalog.taxonomy(), &catalog, config);
      const auto p = tasks::build_prompt(spec, corpus.front(),
                                         t == tasks::TaskId::kNarrativeStructured ? &labels : nullptr);
      // The four joint role tasks share one prompt; the first spec owns it.
      by_instructions.emplace(p.instructions, spec);
    }
  }
};

const ClimateIndex& climate_index() {
  static const ClimateIndex index;
  return index;
}

std::string gold_value(const ArticleRecord& a, const tasks::TaskSpec& spec, const tasks::ResponseField& field) {
  if (tasks::is_narrative(spec.task_id)) return *a.gold_narrative;
  const auto& n = field.name;
  Slot slot = *tasks::task_slot(spec.task_id);
  if (n.rfind("hero", 0) == 0) slot = Slot::kHero;
  else if (n.rfind("villain", 0) == 0) slot = Slot::kVillain;
  else if (n.rfind("victim", 0) == 0) slot = Slot::kVictim;
  else if (n.rfind("focus", 0) == 0) slot = Slot::kFocus;
  return slot_label(*a.gold, slot);
}

// Replaces `label` with another member of `field`, as a model mistake.
std::string perturb(const std::string& label, const tasks::ResponseField& field, std::uint64_t h) {
  std::vector<std::string> options = field.labels;
  if (field.allows_none) options.emplace_back("NONE");
  std::erase(options, label);
  return options.empty() ? label : options[h % options.size()];
}

}  // namespace

std::string climate_answer(const llm::CompletionRequest& request) {
  const auto& index = climate_index();
  const auto it = index.by_instructions.find(request.prompt);
  if (it == index.by_instructions.end()) throw std::runtime_error("unscripted prompt");
  const auto& spec = it->second;
  const ArticleRecord* article = nullptr;
  for (const auto& a : index.corpus) {
    if (request.article_text.ends_with("\n\n" + a.text)) article = &a;
  }
  if (article == nullptr) throw std::runtime_error("unscripted article");

  const auto h = fnv1a(article->id + "/" + spec.primary_field);
  if (spec.task_id == tasks::TaskId::kStory && article->id == "clim-005") {
    return "I am unable to classify the cultural story of this article.";
  }
  ordered_json answer = ordered_json::object();
  for (const auto& field : spec.response_fields) {
    auto value = gold_value(*article, spec, field);
    const auto hf = fnv1a(article->id + "/" + field.name);
    if (hf % 100 < 18) value = perturb(value, field, hf / 100);
    answer[field.name] = value;
  }
  if (spec.task_id == tasks::TaskId::kConflict && article->id == "clim-011") answer[spec.primary_field] = "DE_ESCALATE";

  switch ((h / 7) % 6) {
    case 0: return answer.dump();
    case 1: return "```json\n" + answer.dump(2) + "\n```";
    case 2: return "Here is my assessment of the article.\n" + answer.dump() + "\nThe labels follow the definitions given.";
    case 3: {
      ordered_json lower = ordered_json::object();
      for (auto& [k, v] : answer.items()) lower[k] = text::to_lower(v.get<std::string>());
      return lower.dump();
    }
    case 4: {
      ordered_json reordered = ordered_json::object();
      reordered["reasoning"] = "The article assigns responsibility explicitly.";
      const auto& fields = spec.response_fields;
      for (auto f = fields.rbegin(); f != fields.rend(); ++f) reordered[f->name] = answer[f->name];
      return reordered.dump(2);
    }
    default: {
      ordered_json wrapped = ordered_json::object();
      for (auto& [k, v] : answer.items()) wrapped[k] = ordered_json::array({v});
      return wrapped.dump();
    }
  }
}

std::string covid_answer(const llm::CompletionRequest& request) {
  if (request.article_text.rfind("Entities:", 0) == 0) {
    static const std::pair<const char*, const char*> classes[] = {
        {"Healthcare",
         "frontline workers, medical professionals, and institutions directly involved in providing care and "
         "combatting the pandemic"},
        {"Vulnerable population", "individuals at higher risk of severe illness or death from COVID-19"},
        {"General public", "general public, individuals, communities, and society"},
        {"Government / politicians", "national and regional governments and policymakers"},
        {"Business & economy", "businesses, workers, and the broader economy"},
        {"Science experts", "scientists, researchers, and research institutions"},
        {"Faith groups", "faith-based organizations"},
        {"Pandemic", "the virus itself and the pandemic"},
        {"Global efforts",
         "international organizations, global collaborations, and efforts to address the pandemic on a "
         "worldwide scale"},
    };
    ordered_json list = ordered_json::array();
    for (const auto& [label, description] : classes) list.push_back({{"label", label}, {"description", description}});
    return "Based on the entities provided, the main actors are:\n```json\n" +
           ordered_json{{"stakeholders", list}}.dump(2) + "\n```";
  }
  static const std::map<std::string, std::string> answers{
      {"sp-01", R"({"heroes": ["Nurses", "Doctors", "Healthcare workers"], "villains": ["The virus"], )"
                R"("victims": ["Older citizens"]})"},
      {"sp-02", R"({"heroes": ["Government", "International partners"], "villains": ["Pandemic"], )"
                R"("victims": ["Businesses", "Farmers", "workers"]})"},
      {"sp-03", R"(```json
{"heroes": ["healthcare workers", "Scientists"], "villains": [], "victims": ["the sick", "Faith communities"]}
```)"},
      {"sp-04", R"({"heroes": ["Regional governments", "Citizens"], "villains": ["the virus"], )"
                R"("victims": ["Vulnerable people"]})"},
      {"sp-05", R"({"heroes": ["World health bodies", "Researchers"], "villains": "pandemic", )"
                R"("victims": ["Countries"]})"},
      {"sp-06", "There are no stakeholders in this statement."},
  };
  for (const auto& [id, answer] : answers) {
    for (const auto& s : covid_speeches()) {
      if (s.id == id && request.article_text.ends_with(s.text)) return answer;
    }
  }
  throw std::runtime_error("unscripted speech");
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

// Rewrites every record with the pinned timestamp.
void pin_timestamps(const std::filesystem::path& dir) {
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    auto record = llm::record_from_json(body, entry.path().string());
    record.timestamp = kPinnedTimestamp;
    write_text(entry.path(), llm::record_to_json(record));
  }
}

}  // namespace

void write_all(const std::filesystem::path& root) {
  const auto corpus = climate_corpus();
  {
    std::ostringstream out;
    write_corpus(out, corpus);
    write_text(root / "climate" / "corpus.jsonl", out.str());
  }
  {
    std::ostringstream out;
    const auto annotations = climate_annotations();
    write_annotations(out, annotations);
    write_text(root / "climate" / "annotations.jsonl", out.str());
  }
  {
    std::ostringstream out;
    const auto speeches = covid_speeches();
    write_corpus(out, speeches);
    write_text(root / "covid" / "speeches.jsonl", out.str());
  }

  const auto replay = root / "replay";
  std::filesystem::remove_all(replay);
  {
    // Provider name = archive directory, so the gateway cache is the archive.
    llm::GatewayOptions options;
    options.cache_dir = replay;
    llm::Gateway gateway(std::make_shared<testing::ScriptedProvider>(climate_answer, "climate"), options);
    const auto catalog = climate_catalog();
    const tasks::TaskConfig config;
    tasks::RunOptions run;
    std::map<tasks::TaskId, tasks::PredictionSet> first_runs;
    for (auto t : tasks::kAllTasks) {
      const auto spec = tasks::build_task_spec(t, catalog.taxonomy(), &catalog, config);
      first_runs[t] = tasks::run_task(spec, corpus, gateway, run).front();
    }
    // Structured prompts chained from predicted components.
    const auto chained = tasks::structure_labels_from_predictions(
        first_runs[tasks::TaskId::kHero], first_runs[tasks::TaskId::kVillain], first_runs[tasks::TaskId::kVictim],
        first_runs[tasks::TaskId::kFocus]);
    run.structure_labels = &chained;
    const auto spec = tasks::build_task_spec(tasks::TaskId::kNarrativeStructured, catalog.taxonomy(), &catalog, config);
    tasks::run_task(spec, corpus, gateway, run);
  }
  {
    llm::GatewayOptions options;
    options.cache_dir = replay;
    llm::Gateway gateway(std::make_shared<testing::ScriptedProvider>(covid_answer, "covid"), options);
    bootstrap::BootstrapConfig config;
    const auto speeches = covid_speeches();
    const auto extractions = bootstrap::extract_candidates(speeches, gateway, config);
    const auto merged = bootstrap::merge_candidates(extractions);
    bootstrap::cluster_stakeholders(merged, gateway, config);
  }
  pin_timestamps(replay / "climate");
  pin_timestamps(replay / "covid");
}

std::vector<AdversarialCase> adversarial_cases() {
  using tasks::TaskId;
  std::vector<AdversarialCase> c;
  auto ok = [&](TaskId t, std::string raw, std::string label) { c.push_back({t, std::move(raw), std::move(label)}); };
  auto bad = [&](TaskId t, std::string raw) { c.push_back({t, std::move(raw), std::nullopt}); };

  ok(TaskId::kConflict, R"({"conflict": "FUEL_RESOLUTION"})", "FUEL_RESOLUTION");
  ok(TaskId::kConflict, "```json\n{\"conflict\": \"PREVENT_CONFLICT\"}\n```", "PREVENT_CONFLICT");
  ok(TaskId::kConflict, "```\n{\"conflict\": \"fuel_conflict\"}\n```", "FUEL_CONFLICT");
  ok(TaskId::kConflict, "Sure! Here is the answer:\n{\"conflict\": \"Prevent resolution\"}\nHope this helps.",
     "PREVENT_RESOLUTION");
  ok(TaskId::kConflict, R"({"conflict": "FUEL_RESOLUTION: the article promotes solutions"})", "FUEL_RESOLUTION");
  ok(TaskId::kConflict, R"({"Conflict": "fuel-resolution"})", "FUEL_RESOLUTION");
  ok(TaskId::kConflict, R"({"reasoning": "braces {like this} inside", "conflict": "FUEL_CONFLICT"})", "FUEL_CONFLICT");
  ok(TaskId::kConflict, R"(Thinking {about it}... {"conflict": ["PREVENT_CONFLICT"]})", "PREVENT_CONFLICT");
  ok(TaskId::kConflict, "{\r\n  \"conflict\": \"FUEL_RESOLUTION\"\r\n}", "FUEL_RESOLUTION");
  ok(TaskId::kConflict, R"({"conflict": "  prevent_resolution.  "})", "PREVENT_RESOLUTION");
  ok(TaskId::kStory, R"({"story": "EGALITARIAN"})", "EGALITARIAN");
  ok(TaskId::kStory, R"({"story": "hierarchical"})", "HIERARCHICAL");
  ok(TaskId::kStory, "```JSON\n{ \"story\" : \"Individualistic\" }\n```", "INDIVIDUALISTIC");
  ok(TaskId::kStory, R"({"explanation": "...", "story": "EGALITARIAN - fairness for all"})", "EGALITARIAN");
  ok(TaskId::kStory, "The story is best described as follows. {\"story\": \"HIERARCHICAL\"} Done.", "HIERARCHICAL");
  ok(TaskId::kStory, R"({"STORY": "egalitarian"})", "EGALITARIAN");
  ok(TaskId::kFocus, R"({"hero_class": "NONE", "villain_class": "INDUSTRY_EMISSIONS", "victim_class": "NONE", "focus": "VILLAIN"})",
     "VILLAIN");
  ok(TaskId::kFocus, R"({"focus": "villain", "victim_class": "none", "villain_class": "industry emissions", "hero_class": null})",
     "VILLAIN");
  ok(TaskId::kFocus, R"({"main_character": "hero", "hero_class": "ENV.ORGS_ACTIVISTS"})", "HERO");
  ok(TaskId::kFocus, "```json\n{\"focus_class\": \"Victim\"}\n```", "VICTIM");
  ok(TaskId::kHero, R"({"hero_class": "NONE"})", "NONE");
  ok(TaskId::kHero, R"({"hero_class": "n/a"})", "NONE");
  ok(TaskId::kHero, R"({"hero_class": "science experts sci.reports"})", "SCIENCE_EXPERTS_SCI.REPORTS");
  ok(TaskId::kHero, R"({"hero": "Env.orgs activists"})", "ENV.ORGS_ACTIVISTS");
  ok(TaskId::kVillain, R"({"villain_class": "INDUSTRY_EMISSIONS: industries and their pollution"})", "INDUSTRY_EMISSIONS");
  ok(TaskId::kVictim, R"({"victim_class": ["GENERAL_PUBLIC"]})", "GENERAL_PUBLIC");
  ok(TaskId::kVictim, "Answer:\n```\n{\"victim_class\": \"\"}\n```", "NONE");
  ok(TaskId::kNarrative, R"({"narrative": "ALL_TALK"})", "ALL_TALK");
  ok(TaskId::kNarrative, R"({"narrative": "all talk"})", "ALL_TALK");
  ok(TaskId::kNarrative, "```json\n{\"narrative\": \"12_years\"}\n```", "12_YEARS");

  bad(TaskId::kConflict, "I cannot classify this article.");
  bad(TaskId::kConflict, R"({"conflict": "DE_ESCALATE"})");
  bad(TaskId::kConflict, R"({"stance": "FUEL_RESOLUTION"})");
  bad(TaskId::kConflict, R"({"conflict": "FUEL_RESOLUTION")");
  bad(TaskId::kConflict, "");
  bad(TaskId::kStory, R"({"story": "FATALIST"})");
  bad(TaskId::kStory, R"({"story": null})");
  bad(TaskId::kHero, R"({"hero_class": "ASTRONAUTS"})");
  bad(TaskId::kNarrative, R"({"narrative": ["ALL_TALK", "GORE"]})");
  bad(TaskId::kNarrative, "[\"ALL_TALK\"]");
  return c;
}

}  // namespace narrframe::fixtures
