#include <doctest.h>

#include "narrframe/kv_config.hpp"
#include "narrframe/resources.hpp"
#include "narrframe/text.hpp"
#include "narrframe/vocab.hpp"

using namespace narrframe;

TEST_SUITE("vocab") {
  TEST_CASE("slot names round-trip") {
    for (auto s : kAllSlots) CHECK(slot_from_string(to_string(s)) == s);
    CHECK(slot_from_string("cultural_story") == Slot::kStory);
    CHECK(slot_from_string("HERO") == Slot::kHero);
    CHECK_FALSE(slot_from_string("sidekick"));
  }

  TEST_CASE("scalar tokens round-trip") {
    for (auto f : kAllFocus) CHECK(focus_from_token(to_string(f)) == f);
    for (auto c : kAllConflicts) CHECK(conflict_from_token(to_string(c)) == c);
    for (auto s : kAllStories) CHECK(story_from_token(to_string(s)) == s);
    CHECK(story_from_token("FATALISTIC") == CulturalStory::kFatalist);
    CHECK_FALSE(conflict_from_token("DE_ESCALATE"));
  }

  TEST_CASE("canonical tokens fold case, spacing and dashes") {
    CHECK(text::canonical_token("Fuel resolution") == "FUEL_RESOLUTION");
    CHECK(text::canonical_token("fuel-resolution") == "FUEL_RESOLUTION");
    CHECK(text::canonical_token("  \"prevent  conflict\". ") == "PREVENT_CONFLICT");
    CHECK(text::upper_snake("Government / politicians") == "GOVERNMENT_POLITICIANS");
    CHECK(text::upper_snake("env.orgs & activists") == "ENV.ORGS_ACTIVISTS");
  }

  TEST_CASE("newline normalization") {
    CHECK(text::normalize_newlines("a\r\nb\rc\n") == "a\nb\nc\n");
    CHECK(text::lines("x\ny\n").size() == 2);
  }

  TEST_CASE("key-value config with sections and env overrides") {
    auto c = KvConfig::parse("# comment\nruns = 3\n[openai]\nendpoint = https://x/y\n");
    CHECK(c.get_int("runs", 0) == 3);
    CHECK(c.get_or("openai.endpoint", "") == "https://x/y");
    CHECK(c.section("openai").at("endpoint") == "https://x/y");
    ::setenv("NFTEST_RUNS", "7", 1);
    c.apply_env_overrides("NFTEST_");
    CHECK(c.get_int("runs", 0) == 7);
    ::unsetenv("NFTEST_RUNS");
  }

  TEST_CASE("embedded resources are present") {
    CHECK(resources::find("catalogs/climate.catalog"));
    CHECK(resources::find("taxonomies/covid.tax"));
    CHECK(resources::find("prompts/hvv_joint.txt"));
    CHECK_FALSE(resources::find("prompts/missing.txt"));
  }
}
