#include "narrframe/metrics/run_summary.hpp"

#include <algorithm>
#include <cmath>

#include "narrframe/metrics/errors.hpp"

namespace narrframe::metrics {

std::string_view to_string(VarianceFlag f) {
  switch (f) {
    case VarianceFlag::kNone: return "";
    case VarianceFlag::kHigh: return "high";
    case VarianceFlag::kVeryHigh: return "very high";
  }
  return "?";
}

RunSummary summarize_runs(std::span<const double> scores) {
  if (scores.empty()) throw MetricError(MetricErrc::kEmptyInput, "no run scores");
  RunSummary s;
  s.runs = scores.size();
  double sum = 0.0;
  for (double v : scores) sum += v;
  s.mean = sum / static_cast<double>(s.runs);
  s.min = *std::min_element(scores.begin(), scores.end());
  s.max = *std::max_element(scores.begin(), scores.end());
  if (s.runs > 1) {
    double ss = 0.0;
    for (double v : scores) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.runs - 1));
  }
  if (s.stddev > 0.05) {
    s.flag = VarianceFlag::kVeryHigh;
  } else if (s.stddev > 0.02) {
    s.flag = VarianceFlag::kHigh;
  }
  return s;
}

}  // namespace narrframe::metrics
