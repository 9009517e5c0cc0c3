#include "narrframe/llm/provider.hpp"

#include <fmt/format.h>

namespace narrframe::llm {

std::string CompletionRequest::full_text() const { return prompt + "\n\n" + article_text; }

void check_request(const CompletionRequest& request) {
  if (request.prompt.empty()) throw Error("completion request has an empty prompt");
  if (request.article_text.empty()) throw Error("completion request has an empty article text");
  if (!(request.temperature >= 0.0)) throw Error("completion request temperature must be >= 0");
  if (request.max_output <= 0) throw Error("completion request max_output must be positive");
}

namespace {
std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 300;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}
}  // namespace

ProviderError::ProviderError(int status, std::string body_excerpt, bool transient)
    : Error(fmt::format("provider error (status {}): {}", status, excerpt(body_excerpt))),
      status_(status),
      body_(excerpt(body_excerpt)),
      transient_(transient) {}

CredentialsMissing::CredentialsMissing(std::string provider, std::string env_var)
    : Error(fmt::format("provider '{}' needs an API key in the environment variable {}", provider,
                        env_var)) {}

ReplayMiss::ReplayMiss(std::string fingerprint)
    : Error("replay archive has no record for fingerprint " + fingerprint),
      fingerprint_(std::move(fingerprint)) {}

}  // namespace narrframe::llm
