#pragma once

// In-process providers for tests: responses come from a function of the
// request, and every call is counted.

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "narrframe/llm/provider.hpp"

namespace narrframe::testing {

class ScriptedProvider : public llm::Provider {
 public:
  using Script = std::function<std::string(const llm::CompletionRequest&)>;

  explicit ScriptedProvider(Script script, std::string name = "scripted", bool deterministic = true)
      : script_(std::move(script)), name_(std::move(name)), deterministic_(deterministic) {}

  std::string name() const override { return name_; }
  bool deterministic() const override { return deterministic_; }
  std::string complete(const llm::CompletionRequest& request, const std::string&) override {
    calls_.fetch_add(1);
    const int now = in_flight_.fetch_add(1) + 1;
    for (int seen = peak_.load(); now > seen && !peak_.compare_exchange_weak(seen, now);) {
    }
    struct Leave {
      std::atomic<int>& n;
      ~Leave() { n.fetch_sub(1); }
    } leave{in_flight_};
    return script_(request);
  }

  std::size_t calls() const { return calls_.load(); }
  int peak_in_flight() const { return peak_.load(); }

 private:
  Script script_;
  std::string name_;
  bool deterministic_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> peak_{0};
};

// Fails with the given HTTP status `failures` times, then answers `reply`.
class FlakyProvider : public llm::Provider {
 public:
  FlakyProvider(int failures, int status, std::string reply)
      : remaining_(failures), status_(status), reply_(std::move(reply)) {}

  std::string name() const override { return "flaky"; }
  std::string complete(const llm::CompletionRequest&, const std::string&) override {
    calls_.fetch_add(1);
    if (remaining_.fetch_sub(1) > 0) {
      throw llm::ProviderError(status_, "scripted failure", status_ == 0 || status_ == 429 || status_ >= 500);
    }
    return reply_;
  }
  std::size_t calls() const { return calls_.load(); }

 private:
  std::atomic<int> remaining_;
  int status_;
  std::string reply_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace narrframe::testing
