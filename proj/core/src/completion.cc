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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "plmneuron/errors.h"

namespace plmneuron {

using Json = nlohmann::ordered_json;

void CompletionRequest::Validate() const {
  if (!(temperature > 0.0 && temperature <= 2.0)) {
    throw Error("temperature must be in (0, 2]");
  }
  if (max_tokens < 1) throw Error("max_tokens must be >= 1");
  if (user.empty()) throw Error("user prompt is empty");
}

std::chrono::milliseconds RetryPolicy::Backoff(int retry) const {
  double ms = static_cast<double>(initial_backoff.count());
  for (int i = 1; i < retry; ++i) ms *= multiplier;
  ms = std::min(ms, static_cast<double>(max_backoff.count()));
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

HttpClientConfig HttpClientConfig::FromEnvironment() {
  HttpClientConfig c;
  if (const char* e = std::getenv("PLMNEURON_ENDPOINT")) c.endpoint = e;
  if (const char* k = std::getenv("PLMNEURON_API_KEY")) c.api_key = k;
  return c;
}

HttpCompletionClient::HttpCompletionClient(HttpClientConfig config,
                                           Sleeper sleeper)
    : config_(std::move(config)), sleeper_(std::move(sleeper)) {
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  const std::string& url = config_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error("endpoint '" + url + "' is not an http(s) URL");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error("endpoint '" + url + "' is not an http(s) URL");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw Error("https endpoints need a build with OpenSSL support");
  }
#endif
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpCompletionClient::RequestBody(const CompletionRequest& request) {
  Json messages = Json::array();
  if (!request.system.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user}});
  Json body;
  body["model"] = request.model;
  body["messages"] = std::move(messages);
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  return body.dump();
}

std::string HttpCompletionClient::ResponseContent(std::string_view body) {
  try {
    const Json j = Json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw UnparseableResponseError(std::string("malformed completion body: ") +
                                   e.what());
  }
}

std::string HttpCompletionClient::Redact(std::string text) const {
  if (config_.api_key.empty()) return text;
  std::size_t pos = 0;
  while ((pos = text.find(config_.api_key, pos)) != std::string::npos) {
    text.replace(pos, config_.api_key.size(), "[REDACTED]");
    pos += 10;
  }
  return text;
}

void HttpCompletionClient::Audit(const std::string& request_body, int status,
                                 const std::string& response_body,
                                 const std::string& error) {
  if (config_.audit_log.empty()) return;
  Json entry;
  entry["endpoint"] = Redact(config_.endpoint);
  entry["authorization"] = config_.api_key.empty() ? "none" : "Bearer [REDACTED]";
  entry["request"] = Redact(request_body);
  entry["status"] = status;
  entry["response"] = Redact(response_body);
  if (!error.empty()) entry["error"] = Redact(error);
  std::lock_guard<std::mutex> lock(audit_mutex_);
  std::ofstream out(config_.audit_log, std::ios::app);
  if (!out) throw IoError("cannot open audit log " + config_.audit_log.string());
  out << entry.dump() << '\n';
}

std::string HttpCompletionClient::Complete(const CompletionRequest& request) {
  request.Validate();
  const std::string body = RequestBody(request);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const int attempts = std::max(1, config_.retry.max_attempts);
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) sleeper_(config_.retry.Backoff(attempt - 1));
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_write_timeout(config_.timeout_seconds, 0);
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      Audit(body, 0, "", last_error);
      continue;
    }
    Audit(body, res->status, res->body, "");
    if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint rejected credentials (HTTP " +
                      std::to_string(res->status) + ")");
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw TransportError("HTTP " + std::to_string(res->status) + ": " +
                           Redact(res->body.substr(0, 200)));
    }
    return ResponseContent(res->body);
  }
  throw TransportError("completion failed after " + std::to_string(attempts) +
                       " attempts: " + last_error);
}

ScriptedClient::ScriptedClient(std::vector<std::string> responses)
    : responses_(std::move(responses)) {
  if (responses_.empty()) throw Error("scripted client needs a response");
}

ScriptedClient::ScriptedClient(Responder responder)
    : responder_(std::move(responder)) {}

std::string ScriptedClient::Complete(const CompletionRequest& request) {
  request.Validate();
  std::lock_guard<std::mutex> lock(mutex_);
  requests_.push_back(request);
  if (responder_) return responder_(request);
  const std::size_t i = std::min(next_, responses_.size() - 1);
  ++next_;
  return responses_[i];
}

std::vector<CompletionRequest> ScriptedClient::requests() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return requests_;
}

}  // namespace plmneuron
