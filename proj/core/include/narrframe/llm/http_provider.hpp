#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "narrframe/kv_config.hpp"
#include "narrframe/llm/provider.hpp"

namespace narrframe::llm {

// Declarative description of a chat-completion endpoint.
struct HttpProviderConfig {
  std::string name;
  std::string endpoint;  // full URL
  std::string model;     // default model id
  std::string auth_header = "Authorization";
  std::string auth_scheme;  // e.g. "Bearer"; empty sends the bare key
  std::string api_key_env;
  std::vector<std::pair<std::string, std::string>> extra_headers;
  // JSON body with {{model}} {{system}} {{user}} {{temperature}} {{max_tokens}}.
  std::string request_template;
  std::string response_path;  // JSON pointer to the text
  bool deterministic = true;
  int timeout_seconds = 120;
};

// Reads every [section] of a providers file.
std::map<std::string, HttpProviderConfig> parse_provider_configs(const KvConfig& config);

// Builds the request body for `request` (exposed for tests).
std::string render_request_body(const HttpProviderConfig& config, const CompletionRequest& request);
// Extracts the completion text from a response body; throws ProviderError.
std::string extract_response_text(const HttpProviderConfig& config, const std::string& body);

class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  std::string name() const override { return config_.name; }
  bool deterministic() const override { return config_.deterministic; }
  void check_ready() const override;
  std::string complete(const CompletionRequest& request, const std::string& fingerprint) override;

 private:
  HttpProviderConfig config_;
};

}  // namespace narrframe::llm
