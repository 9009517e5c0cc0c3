#include "narrframe/llm/replay_provider.hpp"

namespace narrframe::llm {

ReplayProvider::ReplayProvider(std::filesystem::path archive, bool deterministic)
    : store_(std::move(archive)), deterministic_(deterministic) {
  if (!std::filesystem::is_directory(store_.dir())) {
    throw Error("replay archive is not a directory: " + store_.dir().string());
  }
}

std::string ReplayProvider::complete(const CompletionRequest&, const std::string& fingerprint) {
  auto record = store_.load(fingerprint);
  if (!record) throw ReplayMiss(fingerprint);
  return record->raw_response;
}

}  // namespace narrframe::llm
