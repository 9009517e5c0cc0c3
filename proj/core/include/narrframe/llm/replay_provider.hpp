#pragma once

#include <filesystem>
#include <string>

#include "narrframe/llm/cache.hpp"
#include "narrframe/llm/provider.hpp"

namespace narrframe::llm {

// Serves recorded responses from an archive directory of <fingerprint>.json
// files; never touches the network.
class ReplayProvider : public Provider {
 public:
  // `deterministic` must match how the archive was recorded.
  explicit ReplayProvider(std::filesystem::path archive, bool deterministic = true);

  std::string name() const override { return "replay"; }
  bool deterministic() const override { return deterministic_; }
  std::string complete(const CompletionRequest& request, const std::string& fingerprint) override;

 private:
  RecordStore store_;
  bool deterministic_;
};

}  // namespace narrframe::llm
