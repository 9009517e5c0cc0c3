#pragma once

#include <string>
#include <string_view>

#include "narrframe/error.hpp"

namespace narrframe::llm {

struct CompletionRequest {
  std::string model_id;
  // Instructions (sent as the system message where the provider supports one).
  std::string prompt;
  // Document under analysis plus any structure labels (the user message).
  std::string article_text;
  double temperature = 0.0;
  int max_output = 1024;
  // Run number within a multi-run experiment; only enters the fingerprint
  // when runs are not expected to be identical.
  int run_index = 0;

  // The exact text the model sees: prompt, blank line, article text.
  std::string full_text() const;
};

// Throws Error if the request breaks its invariants (empty prompt or article, temperature < 0).
void check_request(const CompletionRequest& request);

class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body_excerpt, bool transient);

  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_; }
  // Transport failures, 429 and 5xx; these are retried.
  bool transient() const { return transient_; }

 private:
  int status_;
  std::string body_;
  bool transient_;
};

class CredentialsMissing : public Error {
 public:
  CredentialsMissing(std::string provider, std::string env_var);
};

class ReplayMiss : public Error {
 public:
  explicit ReplayMiss(std::string fingerprint);
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::string fingerprint_;
};

class Provider {
 public:
  virtual ~Provider() = default;

  virtual std::string name() const = 0;
  // False for models whose sampling cannot be pinned (every run gets its own fingerprint).
  virtual bool deterministic() const { return true; }
  // Throws CredentialsMissing before any network traffic when unusable.
  virtual void check_ready() const {}
  virtual std::string complete(const CompletionRequest& request, const std::string& fingerprint) = 0;
};

}  // namespace narrframe::llm
