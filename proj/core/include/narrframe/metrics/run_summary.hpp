#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace narrframe::metrics {

// Standard deviation above 0.02 is high, above 0.05 very high.
enum class VarianceFlag { kNone, kHigh, kVeryHigh };
std::string_view to_string(VarianceFlag f);

struct RunSummary {
  std::size_t runs = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single run
  double min = 0.0;
  double max = 0.0;
  VarianceFlag flag = VarianceFlag::kNone;
};

RunSummary summarize_runs(std::span<const double> scores);

}  // namespace narrframe::metrics
