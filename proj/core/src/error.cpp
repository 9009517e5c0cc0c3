#include "narrframe/error.hpp"

#include <fmt/format.h>

#include <utility>

namespace narrframe {

UnknownLabel::UnknownLabel(std::string raw, std::string slot)
    : Error(fmt::format("unknown label '{}' for slot {}", raw, slot)),
      raw_(std::move(raw)),
      slot_(std::move(slot)) {}

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : Error(line > 0 ? fmt::format("{}:{}: {}", source, line, message)
                     : fmt::format("{}: {}", source, message)),
      source_(std::move(source)),
      line_(line) {}

namespace {
std::string summarize(const std::string& context, const std::vector<std::string>& violations) {
  std::string out = fmt::format("{}: {} violation(s)", context, violations.size());
  for (const auto& v : violations) out += "\n  - " + v;
  return out;
}
}  // namespace

ValidationError::ValidationError(const std::string& context, std::vector<std::string> violations)
    : Error(summarize(context, violations)), violations_(std::move(violations)) {}

}  // namespace narrframe
