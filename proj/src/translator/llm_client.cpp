#include "lam/translator/llm_client.hpp"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace lam::translator {

using nlohmann::json;

LlmEndpoint LlmEndpoint::from_env(LlmEndpoint base) {
  auto env = [](const char* name) -> std::string {
    const char* v = std::getenv(name);
    return v ? v : "";
  };
  if (base.url.empty()) base.url = env("LAM_LLM_URL");
  if (base.api_key.empty()) base.api_key = env("LAM_LLM_API_KEY");
  if (base.model.empty()) base.model = env("LAM_LLM_MODEL");
  return base;
}

namespace {

struct SplitUrl {
  std::string origin;
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw TransportError(TransportError::Kind::kConfig, "endpoint URL needs a scheme: " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/v1/chat/completions"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

ChatCompletion chat_complete(const LlmEndpoint& endpoint, const std::vector<ChatMessage>& messages) {
  if (endpoint.url.empty()) throw TransportError(TransportError::Kind::kConfig, "no chat endpoint configured (LAM_LLM_URL)");
  const SplitUrl target = split_url(endpoint.url);

  json body = {{"model", endpoint.model}, {"temperature", endpoint.temperature}, {"messages", json::array()}};
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});

  httplib::Client client(target.origin);
  const auto seconds = static_cast<time_t>(endpoint.timeout_s);
  const auto micros = static_cast<time_t>((endpoint.timeout_s - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  httplib::Headers headers;
  if (!endpoint.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint.api_key);

  ChatCompletion out;
  for (int attempt = 0;; ++attempt) {
    auto res = client.Post(target.path, headers, body.dump(), "application/json");
    if (!res) {
      const auto err = res.error();
      if (attempt < endpoint.retries) continue;
      const auto kind = err == httplib::Error::Read || err == httplib::Error::Write ? TransportError::Kind::kTimeout
                                                                                    : TransportError::Kind::kConnect;
      throw TransportError(kind, "chat endpoint " + endpoint.url + ": " + httplib::to_string(err));
    }
    out.attempts = attempt + 1;
    if (res->status < 200 || res->status >= 300) {
      throw TransportError(TransportError::Kind::kStatus, "chat endpoint returned HTTP " + std::to_string(res->status),
                           res->body);
    }
    try {
      const json j = json::parse(res->body);
      out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
      if (j.contains("usage") && j["usage"].is_object()) {
        const json& u = j["usage"];
        if (u.contains("prompt_tokens")) out.prompt_tokens = u["prompt_tokens"].get<long>();
        if (u.contains("completion_tokens")) out.completion_tokens = u["completion_tokens"].get<long>();
      }
    } catch (const json::exception& e) {
      throw TransportError(TransportError::Kind::kMalformed, std::string("unexpected completion payload: ") + e.what(),
                           res->body);
    }
    return out;
  }
}

}  // namespace lam::translator
