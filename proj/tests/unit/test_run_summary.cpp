#include <doctest.h>

#include "narrframe/metrics/errors.hpp"
#include "narrframe/metrics/run_summary.hpp"

using namespace narrframe::metrics;

TEST_SUITE("run_summary") {
  TEST_CASE("sample standard deviation and flags") {
    const std::vector<double> stable{0.50, 0.51, 0.50};
    const auto s = summarize_runs(stable);
    CHECK(s.runs == 3);
    CHECK(s.mean == doctest::Approx(0.503333333));
    CHECK(s.stddev == doctest::Approx(0.0057735).epsilon(1e-4));
    CHECK(s.flag == VarianceFlag::kNone);
    CHECK(summarize_runs(std::vector<double>{0.40, 0.45}).flag == VarianceFlag::kHigh);
    CHECK(summarize_runs(std::vector<double>{0.30, 0.45}).flag == VarianceFlag::kVeryHigh);
    CHECK(to_string(VarianceFlag::kVeryHigh) == "very high");
  }

  TEST_CASE("single run has zero spread") {
    const auto s = summarize_runs(std::vector<double>{0.7});
    CHECK(s.stddev == 0.0);
    CHECK(s.min == s.max);
  }

  TEST_CASE("empty input") { CHECK_THROWS_AS(summarize_runs(std::vector<double>{}), MetricError); }
}
