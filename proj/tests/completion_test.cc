// Copyright 2026 The plmneuron Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plmneuron/completion.h"

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "plmneuron/errors.h"
#include "test_util.h"

namespace plmneuron {
namespace {

using nlohmann::json;
using std::chrono::milliseconds;

std::string ChatBody(const std::string& content) {
  return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
      .dump();
}

// Local server whose handler returns the next scripted (status, body).
class FakeEndpoint {
 public:
  explicit FakeEndpoint(std::vector<std::pair<int, std::string>> script)
      : script_(std::move(script)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                httplib::Response& res) {
      const std::size_t i = std::min<std::size_t>(calls_++, script_.size() - 1);
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = req.body;
      res.status = script_[i].first;
      res.set_content(script_[i].second, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  HttpClientConfig Config() const {
    HttpClientConfig c;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
    c.api_key = "sk-secret-123";
    c.timeout_seconds = 5;
    return c;
  }
  int calls() const { return calls_; }
  const std::string& last_auth() const { return last_auth_; }
  const std::string& last_body() const { return last_body_; }

 private:
  httplib::Server server_;
  std::vector<std::pair<int, std::string>> script_;
  std::atomic<int> calls_{0};
  std::string last_auth_, last_body_;
  int port_ = 0;
  std::thread thread_;
};

CompletionRequest Request() {
  CompletionRequest r;
  r.system = "sys";
  r.user = "hello";
  r.model = "m";
  return r;
}

TEST(CompletionRequestTest, Validation) {
  CompletionRequest r = Request();
  EXPECT_NO_THROW(r.Validate());
  r.temperature = 0.0;
  EXPECT_THROW(r.Validate(), Error);
  r.temperature = 2.0;
  EXPECT_NO_THROW(r.Validate());
  r.temperature = 2.1;
  EXPECT_THROW(r.Validate(), Error);
  r = Request();
  r.user.clear();
  EXPECT_THROW(r.Validate(), Error);
  r = Request();
  r.max_tokens = 0;
  EXPECT_THROW(r.Validate(), Error);
}

TEST(RetryPolicyTest, ExponentialCapped) {
  const RetryPolicy p;
  EXPECT_EQ(p.Backoff(1), milliseconds(500));
  EXPECT_EQ(p.Backoff(2), milliseconds(1000));
  EXPECT_EQ(p.Backoff(3), milliseconds(2000));
  EXPECT_EQ(p.Backoff(10), milliseconds(8000));
}

TEST(HttpCompletionClientTest, RequestAndResponseShapes) {
  const json body = json::parse(HttpCompletionClient::RequestBody(Request()));
  EXPECT_EQ(body["model"], "m");
  EXPECT_EQ(body["messages"].size(), 2u);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][1]["content"], "hello");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.9);
  EXPECT_EQ(HttpCompletionClient::ResponseContent(ChatBody("hi")), "hi");
  EXPECT_THROW(HttpCompletionClient::ResponseContent("{}"), UnparseableResponseError);
  EXPECT_THROW(HttpCompletionClient::ResponseContent("nope"), UnparseableResponseError);
}

TEST(HttpCompletionClientTest, Success) {
  FakeEndpoint server({{200, ChatBody("<summary>Binds zinc.</summary>")}});
  HttpCompletionClient client(server.Config(), [](milliseconds) {});
  EXPECT_EQ(client.Complete(Request()), "<summary>Binds zinc.</summary>");
  EXPECT_EQ(server.last_auth(), "Bearer sk-secret-123");
  EXPECT_EQ(json::parse(server.last_body())["messages"][1]["content"], "hello");
}

TEST(HttpCompletionClientTest, RetriesServerErrorsWithBackoff) {
  FakeEndpoint server({{503, "busy"}, {429, "slow down"}, {200, ChatBody("ok")}});
  std::vector<milliseconds> sleeps;
  HttpCompletionClient client(server.Config(), [&](milliseconds d) { sleeps.push_back(d); });
  EXPECT_EQ(client.Complete(Request()), "ok");
  EXPECT_EQ(server.calls(), 3);
  EXPECT_EQ(sleeps, (std::vector<milliseconds>{milliseconds(500), milliseconds(1000)}));
}

TEST(HttpCompletionClientTest, GivesUpAfterMaxAttempts) {
  FakeEndpoint server({{500, "boom"}});
  HttpCompletionClient client(server.Config(), [](milliseconds) {});
  EXPECT_THROW(client.Complete(Request()), TransportError);
  EXPECT_EQ(server.calls(), 3);
}

TEST(HttpCompletionClientTest, AuthFailureIsImmediate) {
  FakeEndpoint server({{401, "no"}});
  HttpCompletionClient client(server.Config(), [](milliseconds) {});
  EXPECT_THROW(client.Complete(Request()), AuthError);
  EXPECT_EQ(server.calls(), 1);
}

TEST(HttpCompletionClientTest, ClientErrorIsNotRetried) {
  FakeEndpoint server({{400, "bad request"}});
  HttpCompletionClient client(server.Config(), [](milliseconds) {});
  EXPECT_THROW(client.Complete(Request()), TransportError);
  EXPECT_EQ(server.calls(), 1);
}

TEST(HttpCompletionClientTest, MalformedBodyIsUnparseable) {
  FakeEndpoint server({{200, "{\"unexpected\":true}"}});
  HttpCompletionClient client(server.Config(), [](milliseconds) {});
  EXPECT_THROW(client.Complete(Request()), UnparseableResponseError);
}

TEST(HttpCompletionClientTest, ConnectionFailureIsTransport) {
  HttpClientConfig c;
  c.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  c.timeout_seconds = 1;
  int sleeps = 0;
  HttpCompletionClient client(c, [&](milliseconds) { ++sleeps; });
  EXPECT_THROW(client.Complete(Request()), TransportError);
  EXPECT_EQ(sleeps, 2);
}

TEST(HttpCompletionClientTest, AuditLogRedactsKey) {
  const auto dir = testing::ScratchDir("audit");
  FakeEndpoint server({{200, ChatBody("echo sk-secret-123")}});
  HttpClientConfig config = server.Config();
  config.audit_log = dir / "audit.jsonl";
  HttpCompletionClient client(config, [](milliseconds) {});
  client.Complete(Request());
  const std::string log = testing::ReadText(dir / "audit.jsonl");
  EXPECT_EQ(log.find("sk-secret-123"), std::string::npos) << log;
  EXPECT_NE(log.find("[REDACTED]"), std::string::npos);
  const json entry = json::parse(log.substr(0, log.find('\n')));
  EXPECT_EQ(entry["status"], 200);
}

TEST(HttpCompletionClientTest, RejectsBadEndpoint) {
  HttpClientConfig c;
  c.endpoint = "ftp://example.com";
  EXPECT_THROW(HttpCompletionClient{c}, Error);
  c.endpoint = "example.com";
  EXPECT_THROW(HttpCompletionClient{c}, Error);
}

TEST(HttpClientConfigTest, FromEnvironment) {
  setenv("PLMNEURON_ENDPOINT", "http://localhost:9/x", 1);
  setenv("PLMNEURON_API_KEY", "k", 1);
  const HttpClientConfig c = HttpClientConfig::FromEnvironment();
  EXPECT_EQ(c.endpoint, "http://localhost:9/x");
  EXPECT_EQ(c.api_key, "k");
  unsetenv("PLMNEURON_ENDPOINT");
  unsetenv("PLMNEURON_API_KEY");
  EXPECT_TRUE(HttpClientConfig::FromEnvironment().endpoint.empty());
}

TEST(ScriptedClientTest, ReplaysAndRecords) {
  ScriptedClient client(std::vector<std::string>{"a", "b"});
  EXPECT_EQ(client.Complete(Request()), "a");
  EXPECT_EQ(client.Complete(Request()), "b");
  EXPECT_EQ(client.Complete(Request()), "b");
  EXPECT_EQ(client.requests().size(), 3u);
  EXPECT_THROW(ScriptedClient(std::vector<std::string>{}), Error);
}

}  // namespace
}  // namespace plmneuron
