// Copyright 2026 The wpnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "wpnav/errors.hpp"
#include "wpnav/llm.hpp"

namespace wpnav {

/// OpenAI-style chat-completion client: POST {model, messages} as JSON and
/// read choices[0].message.content. Configured from WPNAV_LLM_ENDPOINT (full
/// URL), WPNAV_LLM_API_KEY and WPNAV_LLM_MODEL.
class HttpChatBackend : public ChatBackend {
 public:
  HttpChatBackend(std::string endpoint, std::string api_key, std::string model)
      : api_key_(std::move(api_key)), model_(std::move(model)) {
    const auto scheme = endpoint.find("://");
    if (scheme == std::string::npos) throw ConfigError("LLM endpoint must be a full URL: " + endpoint);
    const auto path = endpoint.find('/', scheme + 3);
    base_ = endpoint.substr(0, path);
    path_ = path == std::string::npos ? "/" : endpoint.substr(path);
  }

  static HttpChatBackend from_env() {
    auto get = [](const char* name) -> std::string {
      const char* v = std::getenv(name);
      return v ? v : "";
    };
    const std::string endpoint = get("WPNAV_LLM_ENDPOINT");
    if (endpoint.empty()) throw ConfigError("WPNAV_LLM_ENDPOINT is not set");
    std::string model = get("WPNAV_LLM_MODEL");
    if (model.empty()) throw ConfigError("WPNAV_LLM_MODEL is not set");
    return HttpChatBackend(endpoint, get("WPNAV_LLM_API_KEY"), model);
  }

  std::string complete(const std::vector<ChatMessage>& messages) override {
    nlohmann::json body = {{"model", model_}, {"messages", nlohmann::json::array()}};
    for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});

    httplib::Client cli(base_);
    cli.set_connection_timeout(10);
    cli.set_read_timeout(120);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = cli.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw BackendError("chat endpoint unreachable: " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw BackendError("chat endpoint returned HTTP " + std::to_string(res->status) + ": " +
                         res->body.substr(0, 500));
    }
    try {
      const auto j = nlohmann::json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(std::string("malformed chat response: ") + e.what());
    }
  }

 private:
  std::string base_;
  std::string path_;
  std::string api_key_;
  std::string model_;
};

}  // namespace wpnav
