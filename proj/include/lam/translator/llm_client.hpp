#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lam::translator {

struct LlmEndpoint {
  /// Full URL of an OpenAI-compatible chat-completions endpoint.
  std::string url;
  std::string api_key;
  std::string model;
  double temperature = 0.0;
  double timeout_s = 60.0;
  int retries = 1;

  /// Fills unset fields from LAM_LLM_URL, LAM_LLM_API_KEY and LAM_LLM_MODEL.
  static LlmEndpoint from_env(LlmEndpoint base);
};

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatCompletion {
  std::string text;
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;
  int attempts = 1;
};

class TransportError : public std::runtime_error {
 public:
  enum class Kind { kConfig, kConnect, kStatus, kTimeout, kMalformed };
  TransportError(Kind kind, const std::string& what, std::string body = {})
      : std::runtime_error(what), kind_(kind), body_(std::move(body)) {}
  Kind kind() const { return kind_; }
  const std::string& body() const { return body_; }

 private:
  Kind kind_;
  std::string body_;
};

/// One chat-completion request. Returns the first choice's content
/// untouched. Connection failures and timeouts are retried up to
/// `endpoint.retries` extra times; HTTP error statuses are not.
ChatCompletion chat_complete(const LlmEndpoint& endpoint, const std::vector<ChatMessage>& messages);

}  // namespace lam::translator
