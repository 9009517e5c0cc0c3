#include <doctest.h>

#include "narrframe/llm/fingerprint.hpp"
#include "narrframe/llm/provider.hpp"
#include "scripted_provider.hpp"

using namespace narrframe;
using namespace narrframe::llm;

namespace {
CompletionRequest request(std::string prompt = "Classify.", std::string text = "Article:\nBody") {
  CompletionRequest r;
  r.model_id = "m";
  r.prompt = std::move(prompt);
  r.article_text = std::move(text);
  return r;
}
}  // namespace

TEST_SUITE("fingerprint") {
  TEST_CASE("sha256 of known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("fingerprint covers model and exact text") {
    const auto base = fingerprint(request(), false);
    CHECK(base == sha256_hex("m\nClassify.\n\nArticle:\nBody"));
    auto other_model = request();
    other_model.model_id = "n";
    CHECK(fingerprint(other_model, false) != base);
    CHECK(fingerprint(request("Classify!"), false) != base);
    CHECK(fingerprint(request("Classify.", "Article:\r\nBody"), false) == base);
  }

  TEST_CASE("sampling parameters other than the run index are not fingerprinted") {
    auto r = request();
    r.max_output = 5;
    CHECK(fingerprint(r, false) == fingerprint(request(), false));
    r.run_index = 3;
    CHECK(fingerprint(r, false) == fingerprint(request(), false));
    CHECK(fingerprint(r, true) == sha256_hex("m\nClassify.\n\nArticle:\nBody\nrun=3"));
  }

  TEST_CASE("run index enters only for sampled or nondeterministic generation") {
    testing::ScriptedProvider det([](const auto&) { return ""; }, "d", true);
    testing::ScriptedProvider nondet([](const auto&) { return ""; }, "n", false);
    auto r = request();
    CHECK_FALSE(needs_run_index(r, det));
    CHECK(needs_run_index(r, nondet));
    r.temperature = 0.7;
    CHECK(needs_run_index(r, det));
  }

  TEST_CASE("request invariants") {
    CHECK_NOTHROW(check_request(request()));
    CHECK_THROWS_AS(check_request(request("")), Error);
    CHECK_THROWS_AS(check_request(request("p", "")), Error);
    auto r = request();
    r.temperature = -1;
    CHECK_THROWS_AS(check_request(r), Error);
    CHECK(request().full_text() == "Classify.\n\nArticle:\nBody");
  }
}
