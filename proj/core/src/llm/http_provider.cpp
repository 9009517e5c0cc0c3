#include "narrframe/llm/http_provider.hpp"

#include <cstdlib>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "narrframe/text.hpp"

namespace narrframe::llm {

using nlohmann::json;

std::map<std::string, HttpProviderConfig> parse_provider_configs(const KvConfig& config) {
  std::map<std::string, HttpProviderConfig> out;
  for (const auto& name : config.sections()) {
    const auto kv = config.section(name);
    auto get = [&](const char* key, std::string fallback = {}) {
      auto it = kv.find(key);
      return it == kv.end() ? fallback : it->second;
    };
    HttpProviderConfig c;
    c.name = name;
    c.endpoint = get("endpoint");
    c.model = get("model");
    c.auth_header = get("auth_header", "Authorization");
    c.auth_scheme = get("auth_scheme");
    c.api_key_env = get("api_key_env");
    c.request_template = get("request_template");
    c.response_path = get("response_path");
    c.deterministic = config.get_bool(name + ".deterministic", true);
    c.timeout_seconds = static_cast<int>(config.get_int(name + ".timeout_seconds", 120));
    // "Name: value; Name: value"
    for (const auto& part : text::split(get("extra_headers"), ';')) {
      const auto colon = part.find(':');
      if (colon == std::string::npos) continue;
      c.extra_headers.emplace_back(std::string(text::trim(std::string_view(part).substr(0, colon))),
                                   std::string(text::trim(std::string_view(part).substr(colon + 1))));
    }
    std::vector<std::string> missing;
    if (c.endpoint.empty()) missing.emplace_back("endpoint");
    if (c.model.empty()) missing.emplace_back("model");
    if (c.request_template.empty()) missing.emplace_back("request_template");
    if (c.response_path.empty()) missing.emplace_back("response_path");
    if (!missing.empty()) {
      throw ValidationError("provider '" + name + "'", {"missing keys: " + text::join(missing, ", ")});
    }
    out.emplace(name, std::move(c));
  }
  return out;
}

namespace {

void substitute(json& node, const CompletionRequest& request, const std::string& model) {
  if (node.is_object() || node.is_array()) {
    for (auto& child : node) substitute(child, request, model);
    return;
  }
  if (!node.is_string()) return;
  const auto s = node.get<std::string>();
  // A string holding only a numeric placeholder becomes a JSON number.
  if (s == "{{temperature}}") {
    node = request.temperature;
    return;
  }
  if (s == "{{max_tokens}}") {
    node = request.max_output;
    return;
  }
  auto v = text::replace_all(s, "{{model}}", model);
  v = text::replace_all(v, "{{system}}", request.prompt);
  v = text::replace_all(v, "{{user}}", request.article_text);
  v = text::replace_all(v, "{{temperature}}", fmt::format("{}", request.temperature));
  v = text::replace_all(v, "{{max_tokens}}", std::to_string(request.max_output));
  node = v;
}

}  // namespace

std::string render_request_body(const HttpProviderConfig& config, const CompletionRequest& request) {
  json body;
  try {
    body = json::parse(config.request_template);
  } catch (const json::parse_error& e) {
    throw ParseError("provider '" + config.name + "' request_template", 0, e.what());
  }
  substitute(body, request, request.model_id.empty() ? config.model : request.model_id);
  return body.dump();
}

std::string extract_response_text(const HttpProviderConfig& config, const std::string& body) {
  try {
    const auto obj = json::parse(body);
    const json::json_pointer ptr(config.response_path);
    if (!obj.contains(ptr)) throw ProviderError(200, "response lacks " + config.response_path + ": " + body, false);
    const auto& v = obj.at(ptr);
    return v.is_string() ? v.get<std::string>() : v.dump();
  } catch (const json::exception& e) {
    throw ProviderError(200, std::string("unreadable response body: ") + e.what(), false);
  }
}

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {}

void HttpProvider::check_ready() const {
  if (config_.api_key_env.empty()) return;
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') throw CredentialsMissing(config_.name, config_.api_key_env);
}

std::string HttpProvider::complete(const CompletionRequest& request, const std::string&) {
  check_ready();
  const auto scheme_end = config_.endpoint.find("://");
  const auto path_start =
      config_.endpoint.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  const auto origin = config_.endpoint.substr(0, path_start);
  const auto path = path_start == std::string::npos ? std::string("/") : config_.endpoint.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(30);
  client.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    std::string key = std::getenv(config_.api_key_env.c_str());
    headers.emplace(config_.auth_header,
                    config_.auth_scheme.empty() ? key : config_.auth_scheme + " " + key);
  }
  for (const auto& [k, v] : config_.extra_headers) headers.emplace(k, v);

  auto res = client.Post(path, headers, render_request_body(config_, request), "application/json");
  if (!res) throw ProviderError(0, "transport: " + httplib::to_string(res.error()), true);
  if (res->status == 429 || res->status >= 500) throw ProviderError(res->status, res->body, true);
  if (res->status < 200 || res->status >= 300) throw ProviderError(res->status, res->body, false);
  return extract_response_text(config_, res->body);
}

}  // namespace narrframe::llm
