#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "narrframe/text.hpp"
#include "test_util.hpp"

using narrframe::testing::read_file;
using narrframe::testing::TempDir;
using json = nlohmann::json;

namespace {

const std::filesystem::path kFixtures{NARRFRAME_FIXTURES_DIR};

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

// Runs the CLI with stdout captured and stderr sent to a scratch file.
RunResult run(const std::string& args) {
  TempDir scratch;
  const auto err_file = scratch / "stderr.txt";
  const std::string cmd = quote(NARRFRAME_CLI) + " " + args + " 2>" + quote(err_file.string());
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (std::filesystem::exists(err_file)) r.err = read_file(err_file);
  return r;
}

std::string corpus() { return quote((kFixtures / "climate" / "corpus.jsonl").string()); }
std::string replay(const std::string& archive = "climate") {
  return "--provider replay --replay " + quote((kFixtures / "replay" / archive).string());
}

}  // namespace

TEST_CASE("help lists every subcommand and bad usage exits 64") {
  const auto help = run("--help");
  CHECK(help.exit_code == 0);
  for (const char* sub : {"ingest", "predict", "record", "match", "bootstrap", "catalog-validate", "eval", "agree",
                          "analyze"}) {
    CHECK(help.out.find(sub) != std::string::npos);
  }
  CHECK(run("frobnicate").exit_code == 64);
  CHECK(run("predict").exit_code == 64);
  CHECK(run("match --corpus " + corpus()).exit_code == 64);
}

TEST_CASE("ingest normalizes the fixture corpus") {
  const auto r = run("ingest --input " + corpus());
  CHECK(r.exit_code == 0);
  CHECK(r.out == read_file(kFixtures / "climate" / "corpus.jsonl"));
}

TEST_CASE("catalog-validate reports the shipped catalog") {
  const auto r = run("catalog-validate --enumerate");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["violations"].empty());
  CHECK(j["enumeration"]["structures"] == 63888);
}

TEST_CASE("malformed input files are validation errors") {
  TempDir dir;
  narrframe::testing::write_file(dir / "bad.jsonl", "{not json\n");
  const auto r = run("ingest --input " + quote((dir / "bad.jsonl").string()));
  CHECK(r.exit_code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("predict from the replay archive, then eval, match and analyze") {
  TempDir dir;
  const auto runs = quote((dir / "runs").string());
  const auto predict = run(replay() + " --runs 2 predict --corpus " + corpus() + " --runs-dir " + runs);
  REQUIRE_MESSAGE(predict.exit_code == 0, predict.err);
  const auto story = dir / "runs" / "replay" / "story";
  REQUIRE(std::filesystem::exists(story / "run0.jsonl"));
  REQUIRE(std::filesystem::exists(story / "run1.jsonl"));
  CHECK(std::filesystem::exists(dir / "runs" / "replay" / "narrative_structured" / "run0.jsonl"));

  SUBCASE("two predict runs are byte-identical") {
    TempDir again;
    const auto second =
        run(replay() + " --runs 2 predict --corpus " + corpus() + " --runs-dir " + quote((again / "runs").string()));
    REQUIRE(second.exit_code == 0);
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir / "runs")) {
      if (!entry.is_regular_file()) continue;
      const auto rel = std::filesystem::relative(entry.path(), dir / "runs");
      CHECK(read_file(entry.path()) == read_file(again / "runs" / rel));
    }
  }

  SUBCASE("eval writes tables and reports both runs") {
    const auto out = dir / "eval";
    const auto r = run("eval --task story --gold " + corpus() + " --pred " + quote(story.string()) + " --out-dir " +
                       quote(out.string()) + " --baseline");
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    const auto j = json::parse(r.out);
    CHECK(j.dump().find("macro_f1") != std::string::npos);
    CHECK(std::filesystem::exists(out / "story_run0_per_class.csv"));
    CHECK(std::filesystem::exists(out / "story_run1_confusion.svg"));
    CHECK(std::filesystem::exists(out / "story_summary.json"));
  }

  SUBCASE("match over predictions and gold") {
    const auto pred = run("match --corpus " + corpus() + " --pred-dir " + quote((dir / "runs" / "replay").string()));
    REQUIRE_MESSAGE(pred.exit_code == 0, pred.err);
    std::size_t lines = 0;
    for (const auto& line : narrframe::text::lines(pred.out)) {
      const auto j = json::parse(line);
      CHECK(j.contains("verdict"));
      ++lines;
    }
    CHECK(lines == 32);

    const auto gold = run("match --corpus " + corpus() + " --use-gold");
    REQUIRE(gold.exit_code == 0);
    for (const auto& line : narrframe::text::lines(gold.out)) {
      const auto j = json::parse(line);
      CHECK(j["verdict"] == "UNIQUE");
      CHECK(j["frame"] == j["gold_narrative"]);
    }
  }
}

TEST_CASE("predict without an archive entry exits 2") {
  TempDir empty;
  std::filesystem::create_directories(empty / "archive");
  const auto r = run("--provider replay --replay " + quote((empty / "archive").string()) +
                     " predict --task story --corpus " + corpus() + " --runs-dir " + quote((empty / "runs").string()));
  CHECK(r.exit_code == 2);
}

TEST_CASE("analyze writes distributions, crosstabs and the intersection") {
  TempDir dir;
  const auto r = run("analyze --corpus " + corpus() + " --slot conflict --slot narrative --by leaning --by year" +
                     " --intersection --out-dir " + quote(dir.path().string()));
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  CHECK(std::filesystem::exists(dir / "conflict_distribution.csv"));
  CHECK(std::filesystem::exists(dir / "conflict_by_leaning.csv"));
  CHECK(std::filesystem::exists(dir / "narrative_by_year_heatmap.svg"));
  CHECK(std::filesystem::exists(dir / "narrative_by_generic_frame.csv"));
  CHECK(run("analyze --corpus " + corpus() + " --slot conflict --by author --out-dir " +
            quote(dir.path().string()))
            .exit_code != 0);
}

TEST_CASE("agree reports alpha and writes adjudicated labels") {
  TempDir dir;
  const auto adjudicated = dir / "adjudicated.jsonl";
  const auto r = run("agree --annotations " + quote((kFixtures / "climate" / "annotations.jsonl").string()) +
                     " --slot hero --expert expert --adjudicated " + quote(adjudicated.string()));
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  const auto j = json::parse(r.out);
  CHECK(j["krippendorff_alpha"].is_number());
  CHECK(j["krippendorff_alpha"].get<double>() <= 1.0);
  CHECK(std::filesystem::exists(adjudicated));
}

TEST_CASE("bootstrap replays the COVID archive into a taxonomy and task specs") {
  TempDir dir;
  const auto r = run(replay("covid") + " bootstrap --corpus " +
                     quote((kFixtures / "covid" / "speeches.jsonl").string()) + " --out-dir " +
                     quote(dir.path().string()));
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  CHECK(read_file(dir / "covid-19.tax") == read_file(std::filesystem::path(NARRFRAME_SOURCE_DIR) / "tests" /
                                                        "golden" / "covid.tax"));
  CHECK(std::filesystem::exists(dir / "candidates.json"));
  CHECK(std::filesystem::exists(dir / "tasks" / "story.json"));
}
