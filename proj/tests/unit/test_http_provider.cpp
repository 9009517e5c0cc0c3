#include <doctest.h>

#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "narrframe/error.hpp"
#include "narrframe/kv_config.hpp"
#include "narrframe/llm/gateway.hpp"
#include "narrframe/llm/http_provider.hpp"

using namespace narrframe;
using namespace narrframe::llm;
using nlohmann::json;

namespace {

// Local chat-completion endpoint answering from a fixed script of statuses.
class FakeEndpoint {
 public:
  explicit FakeEndpoint(std::vector<int> statuses) : statuses_(std::move(statuses)) {
    server_.Post("/v1/chat", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      last_extra_ = req.get_header_value("X-Version");
      const int status = hits_ < statuses_.size() ? statuses_[hits_] : 200;
      ++hits_;
      res.status = status;
      if (status == 200) {
        res.set_content(json{{"choices", {{{"message", {{"content", "{\"story\": \"EGALITARIAN\"}"}}}}}}}.dump(),
                        "application/json");
      } else {
        res.set_content("{\"error\": \"scripted\"}", "application/json");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat"; }
  std::size_t hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
  }
  json last_body() const {
    std::lock_guard lock(mutex_);
    return json::parse(last_body_);
  }
  std::string last_auth() const {
    std::lock_guard lock(mutex_);
    return last_auth_;
  }
  std::string last_extra() const {
    std::lock_guard lock(mutex_);
    return last_extra_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::vector<int> statuses_;
  mutable std::mutex mutex_;
  std::size_t hits_ = 0;
  std::string last_body_;
  std::string last_auth_;
  std::string last_extra_;
};

HttpProviderConfig config_for(const std::string& url) {
  HttpProviderConfig c;
  c.name = "fake";
  c.endpoint = url;
  c.model = "model-x";
  c.auth_scheme = "Bearer";
  c.api_key_env = "NARRFRAME_TEST_KEY";
  c.extra_headers = {{"X-Version", "7"}};
  c.request_template =
      R"({"model": "{{model}}", "temperature": "{{temperature}}", "max_tokens": "{{max_tokens}}", )"
      R"("messages": [{"role": "system", "content": "{{system}}"}, {"role": "user", "content": "{{user}}"}]})";
  c.response_path = "/choices/0/message/content";
  c.timeout_seconds = 5;
  return c;
}

CompletionRequest request() {
  CompletionRequest r;
  r.prompt = "Pick a \"story\".\nOne line.";
  r.article_text = "Article:\nBody {with braces}";
  r.max_output = 77;
  return r;
}

}  // namespace

TEST_SUITE("http_provider") {
  TEST_CASE("request body substitutes placeholders with proper JSON escaping") {
    const auto body = json::parse(render_request_body(config_for("http://x/y"), request()));
    CHECK(body["model"] == "model-x");
    CHECK(body["temperature"].is_number());
    CHECK(body["max_tokens"] == 77);
    CHECK(body["messages"][0]["content"] == "Pick a \"story\".\nOne line.");
    CHECK(body["messages"][1]["content"] == "Article:\nBody {with braces}");
    auto r = request();
    r.model_id = "override";
    CHECK(json::parse(render_request_body(config_for("http://x/y"), r))["model"] == "override");
  }

  TEST_CASE("response extraction") {
    const auto c = config_for("http://x/y");
    CHECK(extract_response_text(c, R"({"choices":[{"message":{"content":"hi"}}]})") == "hi");
    CHECK_THROWS_AS(extract_response_text(c, R"({"choices":[]})"), ProviderError);
    CHECK_THROWS_AS(extract_response_text(c, "not json"), ProviderError);
  }

  TEST_CASE("providers file parsing") {
    const auto kv = KvConfig::parse(
        "[p]\nendpoint = http://h/v1\nmodel = m\napi_key_env = K\nextra_headers = A: 1; B: two\n"
        "request_template = {}\nresponse_path = /x\ndeterministic = false\n");
    const auto configs = parse_provider_configs(kv);
    const auto& p = configs.at("p");
    CHECK_FALSE(p.deterministic);
    CHECK(p.extra_headers == std::vector<std::pair<std::string, std::string>>{{"A", "1"}, {"B", "two"}});
    CHECK_THROWS_AS(parse_provider_configs(KvConfig::parse("[q]\nmodel = m\n")), ValidationError);
  }

  TEST_CASE("missing credentials fail before any network traffic") {
    ::unsetenv("NARRFRAME_TEST_KEY");
    FakeEndpoint endpoint({});
    HttpProvider p(config_for(endpoint.url()));
    CHECK_THROWS_AS(p.check_ready(), CredentialsMissing);
    CHECK_THROWS_AS(p.complete(request(), "fp"), CredentialsMissing);
    CHECK(endpoint.hits() == 0);
  }

  TEST_CASE("round trip against a local endpoint") {
    ::setenv("NARRFRAME_TEST_KEY", "secret", 1);
    FakeEndpoint endpoint({});
    HttpProvider p(config_for(endpoint.url()));
    CHECK(p.complete(request(), "fp") == "{\"story\": \"EGALITARIAN\"}");
    CHECK(endpoint.last_auth() == "Bearer secret");
    CHECK(endpoint.last_extra() == "7");
    CHECK(endpoint.last_body()["messages"][1]["content"] == "Article:\nBody {with braces}");
    ::unsetenv("NARRFRAME_TEST_KEY");
  }

  TEST_CASE("server errors are retried through the gateway, client errors are not") {
    ::setenv("NARRFRAME_TEST_KEY", "secret", 1);
    {
      FakeEndpoint endpoint({503, 500});
      GatewayOptions o;
      o.backoff = std::chrono::milliseconds(1);
      Gateway gw(std::make_shared<HttpProvider>(config_for(endpoint.url())), o);
      CHECK(gw.complete(request()).text == "{\"story\": \"EGALITARIAN\"}");
      CHECK(endpoint.hits() == 3);
    }
    {
      FakeEndpoint endpoint({404});
      GatewayOptions o;
      o.backoff = std::chrono::milliseconds(1);
      Gateway gw(std::make_shared<HttpProvider>(config_for(endpoint.url())), o);
      CHECK_THROWS_AS(gw.complete(request()), ProviderError);
      CHECK(endpoint.hits() == 1);
    }
    ::unsetenv("NARRFRAME_TEST_KEY");
  }

  TEST_CASE("unreachable endpoints are transient transport errors") {
    ::setenv("NARRFRAME_TEST_KEY", "secret", 1);
    auto c = config_for("http://127.0.0.1:1/v1/chat");
    HttpProvider p(c);
    try {
      p.complete(request(), "fp");
      FAIL("expected ProviderError");
    } catch (const ProviderError& e) {
      CHECK(e.transient());
      CHECK(e.status() == 0);
    }
    ::unsetenv("NARRFRAME_TEST_KEY");
  }
}
