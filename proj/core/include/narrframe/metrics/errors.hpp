#pragma once

#include <string>
#include <string_view>

#include "narrframe/error.hpp"

namespace narrframe::metrics {

enum class MetricErrc {
  kLengthMismatch,
  kUnknownClassInGold,
  kEmptyInput,
  kDegenerateTable,
  kDegenerateMarginals,
  kSingleClassVocabulary,
};

std::string_view to_string(MetricErrc e);

class MetricError : public Error {
 public:
  MetricError(MetricErrc code, const std::string& detail);
  MetricErrc code() const { return code_; }

 private:
  MetricErrc code_;
};

}  // namespace narrframe::metrics
