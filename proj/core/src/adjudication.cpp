#include <algorithm>
#include <map>

#include "narrframe/matcher.hpp"

namespace narrframe {

Adjudication adjudicate(std::span<const AnnotationRecord> records, Slot slot,
                        std::optional<std::string_view> expert_annotator) {
  if (records.empty()) throw Error("EmptyInput: no annotations to adjudicate");
  const auto& article = records.front().article_id;
  std::map<std::string, std::size_t> counts;
  std::optional<std::string> expert_label;
  for (const auto& r : records) {
    if (r.article_id != article || r.slot != slot) {
      throw Error("adjudicate: records must share article_id and slot");
    }
    ++counts[r.label];
    if (expert_annotator && r.annotator_id == *expert_annotator) expert_label = r.label;
  }

  std::size_t best = 0;
  for (const auto& [label, n] : counts) best = std::max(best, n);
  std::vector<std::string> top;
  for (const auto& [label, n] : counts) {
    if (n == best) top.push_back(label);
  }

  Adjudication out;
  out.support = best;
  if (top.size() == 1) {
    out.label = top.front();
    return out;
  }
  out.tie = true;
  out.tied_labels = top;
  if (expert_label && std::find(top.begin(), top.end(), *expert_label) != top.end()) {
    out.label = *expert_label;
  } else {
    out.label = top.front();
    out.resolved = false;
  }
  return out;
}

}  // namespace narrframe
