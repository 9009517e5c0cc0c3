#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "narrframe/llm/cache.hpp"
#include "narrframe/llm/provider.hpp"

namespace narrframe::llm {

struct GatewayOptions {
  // Cache root; records go to <cache_dir>/<provider>/<fingerprint>.json.
  // Empty disables caching.
  std::filesystem::path cache_dir;
  int max_retries = 3;
  std::chrono::milliseconds backoff{500};
  std::size_t max_in_flight = 4;
};

struct Completion {
  std::string fingerprint;
  std::string text;
  bool from_cache = false;
};

// Result of one request in a batch: either a completion or the error text.
struct BatchItem {
  std::optional<Completion> completion;
  std::string error;
  bool provider_error = false;
};

// Uniform, cached access to a provider. Thread-safe.
class Gateway {
 public:
  Gateway(std::shared_ptr<Provider> provider, GatewayOptions options = {});

  Provider& provider() const { return *provider_; }
  const GatewayOptions& options() const { return options_; }

  std::string fingerprint_of(const CompletionRequest& request) const;

  // Cache lookup, then the provider with retries on transient failures.
  Completion complete(const CompletionRequest& request);

  // Requests sharing a fingerprint are sent once; the stored record carries
  // how many of them it served. At most max_in_flight provider calls run
  // concurrently. With fail_soft, per-item errors are reported in the result;
  // otherwise the first error is rethrown after in-flight work drains.
  std::vector<BatchItem> complete_all(std::span<const CompletionRequest> requests,
                                      bool fail_soft = true);

  // Number of provider calls that returned a response.
  std::size_t live_calls() const { return live_calls_.load(); }

 private:
  Completion fetch(const CompletionRequest& request, const std::string& fingerprint, int run_count);
  std::string call_with_retries(const CompletionRequest& request, const std::string& fingerprint);

  std::shared_ptr<Provider> provider_;
  GatewayOptions options_;
  std::optional<RecordStore> store_;
  std::atomic<std::size_t> live_calls_{0};
};

}  // namespace narrframe::llm
