#include "narrframe/llm/gateway.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "narrframe/llm/fingerprint.hpp"

namespace narrframe::llm {

Gateway::Gateway(std::shared_ptr<Provider> provider, GatewayOptions options)
    : provider_(std::move(provider)), options_(std::move(options)) {
  if (!provider_) throw Error("gateway needs a provider");
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
  if (!options_.cache_dir.empty()) store_.emplace(options_.cache_dir / provider_->name());
}

std::string Gateway::fingerprint_of(const CompletionRequest& request) const {
  return fingerprint(request, needs_run_index(request, *provider_));
}

std::string Gateway::call_with_retries(const CompletionRequest& request,
                                       const std::string& fingerprint) {
  provider_->check_ready();
  for (int attempt = 0;; ++attempt) {
    try {
      auto text = provider_->complete(request, fingerprint);
      ++live_calls_;
      return text;
    } catch (const ProviderError& e) {
      if (!e.transient() || attempt >= options_.max_retries) throw;
    }
    std::this_thread::sleep_for(options_.backoff * (1 << std::min(attempt, 10)));
  }
}

Completion Gateway::fetch(const CompletionRequest& request, const std::string& fp, int run_count) {
  if (store_) {
    if (auto record = store_->load(fp)) return {fp, std::move(record->raw_response), true};
  }
  auto text = call_with_retries(request, fp);
  if (store_) {
    CompletionRecord record{fp, request.model_id, provider_->name(), text, utc_timestamp(), run_count};
    store_->store(record);
  }
  return {fp, std::move(text), false};
}

Completion Gateway::complete(const CompletionRequest& request) {
  check_request(request);
  return fetch(request, fingerprint_of(request), 1);
}

std::vector<BatchItem> Gateway::complete_all(std::span<const CompletionRequest> requests,
                                             bool fail_soft) {
  std::vector<BatchItem> out(requests.size());
  // Group by fingerprint, keeping first-occurrence order.
  std::vector<std::string> fps(requests.size());
  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::string, std::size_t> group_of;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    try {
      check_request(requests[i]);
    } catch (const Error& e) {
      if (!fail_soft) throw;
      out[i].error = e.what();
      continue;
    }
    fps[i] = fingerprint_of(requests[i]);
    auto [it, fresh] = group_of.emplace(fps[i], groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(i);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const auto g = next.fetch_add(1);
      if (g >= groups.size()) return;
      const auto& members = groups[g];
      const auto lead = members.front();
      BatchItem item;
      try {
        item.completion = fetch(requests[lead], fps[lead], static_cast<int>(members.size()));
      } catch (const Error& e) {
        item.error = e.what();
        item.provider_error = dynamic_cast<const ProviderError*>(&e) != nullptr ||
                              dynamic_cast<const CredentialsMissing*>(&e) != nullptr ||
                              dynamic_cast<const ReplayMiss*>(&e) != nullptr;
        if (!fail_soft) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          abort = true;
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        abort = true;
        return;
      }
      for (auto i : members) out[i] = item;
    }
  };

  const auto threads = std::min(options_.max_in_flight, groups.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace narrframe::llm
