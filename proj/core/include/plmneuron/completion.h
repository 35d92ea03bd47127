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

#ifndef PLMNEURON_COMPLETION_H_
#define PLMNEURON_COMPLETION_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace plmneuron {

struct CompletionRequest {
  std::string system;  // may be empty
  std::string user;
  double temperature = 0.9;
  int max_tokens = 256;
  std::string model;

  // Throws Error unless 0 < temperature <= 2, max_tokens >= 1 and the user
  // prompt is non-empty.
  void Validate() const;
};

// A chat-completion service. Implementations throw TransportError for
// network and server failures and AuthError for rejected credentials.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual std::string Complete(const CompletionRequest& request) = 0;
  virtual std::string_view kind() const = 0;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};

  // Delay before retry number `retry` (1-based).
  std::chrono::milliseconds Backoff(int retry) const;
};

struct HttpClientConfig {
  // Full URL of an OpenAI-compatible chat completions endpoint, e.g.
  // https://api.example.com/v1/chat/completions.
  std::string endpoint;
  std::string api_key;
  int timeout_seconds = 60;
  RetryPolicy retry;
  // Request/response audit log (JSON lines); empty disables it.
  std::filesystem::path audit_log;

  // Reads PLMNEURON_ENDPOINT and PLMNEURON_API_KEY. Missing variables leave
  // the fields empty.
  static HttpClientConfig FromEnvironment();
};

class HttpCompletionClient : public CompletionClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  // Throws Error if the endpoint is not an http(s) URL, or is https in a
  // build without TLS support.
  explicit HttpCompletionClient(HttpClientConfig config, Sleeper sleeper = {});

  // Retries connection failures, 429 and 5xx responses with exponential
  // backoff. 401/403 raise AuthError immediately.
  std::string Complete(const CompletionRequest& request) override;
  std::string_view kind() const override { return "remote"; }

  // Builds the JSON request body.
  static std::string RequestBody(const CompletionRequest& request);
  // Extracts choices[0].message.content. Throws UnparseableResponseError.
  static std::string ResponseContent(std::string_view body);

 private:
  void Audit(const std::string& request_body, int status,
             const std::string& response_body, const std::string& error);
  std::string Redact(std::string text) const;

  HttpClientConfig config_;
  Sleeper sleeper_;
  std::string scheme_host_port_;
  std::string path_;
  std::mutex audit_mutex_;
};

// Replays canned responses in order; used in tests and dry runs. Once the
// script is exhausted the last response repeats.
class ScriptedClient : public CompletionClient {
 public:
  using Responder = std::function<std::string(const CompletionRequest&)>;

  explicit ScriptedClient(std::vector<std::string> responses);
  explicit ScriptedClient(Responder responder);

  std::string Complete(const CompletionRequest& request) override;
  std::string_view kind() const override { return "scripted"; }

  std::vector<CompletionRequest> requests() const;

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> responses_;
  Responder responder_;
  std::size_t next_ = 0;
  std::vector<CompletionRequest> requests_;
};

}  // namespace plmneuron

#endif  // PLMNEURON_COMPLETION_H_
