#include <doctest.h>

#include "narrframe/error.hpp"
#include "narrframe/matcher.hpp"

using namespace narrframe;

namespace {
std::vector<AnnotationRecord> votes(std::initializer_list<std::pair<const char*, const char*>> v) {
  std::vector<AnnotationRecord> out;
  for (auto [who, label] : v) out.push_back({"a1", who, Slot::kStory, label});
  return out;
}
}  // namespace

TEST_SUITE("adjudication") {
  TEST_CASE("majority label wins") {
    const auto a = adjudicate(votes({{"x", "EGALITARIAN"}, {"y", "EGALITARIAN"}, {"z", "HIERARCHICAL"}}),
                              Slot::kStory);
    CHECK(a.label == "EGALITARIAN");
    CHECK(a.support == 2);
    CHECK_FALSE(a.tie);
    CHECK(a.resolved);
  }

  TEST_CASE("ties are flagged and resolved by the expert when possible") {
    const auto records = votes({{"x", "A"}, {"y", "A"}, {"z", "B"}, {"w", "B"}, {"v", "C"}});
    const auto plain = adjudicate(records, Slot::kStory);
    CHECK(plain.tie);
    CHECK(plain.tied_labels == std::vector<std::string>{"A", "B"});
    CHECK_FALSE(plain.resolved);
    CHECK(plain.label == "A");
    const auto expert = adjudicate(records, Slot::kStory, "z");
    CHECK(expert.resolved);
    CHECK(expert.label == "B");
    // An expert outside the tie does not resolve it.
    CHECK_FALSE(adjudicate(records, Slot::kStory, "v").resolved);
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(adjudicate({}, Slot::kStory), Error);
    auto mixed = votes({{"x", "A"}});
    mixed.push_back({"a2", "y", Slot::kStory, "A"});
    CHECK_THROWS_AS(adjudicate(mixed, Slot::kStory), Error);
    CHECK_THROWS_AS(adjudicate(votes({{"x", "A"}}), Slot::kHero), Error);
  }
}
