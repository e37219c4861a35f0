#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cforge::llm {

enum class Role { system, user, assistant };

std::string_view to_string(Role role);
Role role_from_string(std::string_view s);

struct ChatMessage {
    Role role;
    std::string content;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    std::string model_name = "gpt-3.5-turbo";
    double temperature = 1.0;
    std::size_t max_output_tokens = 4096;

    // Throws std::invalid_argument: no messages, empty content, negative temperature.
    void validate() const;

    // Content of the first message with the given role, if any.
    const ChatMessage *first(Role role) const;
    const ChatMessage *last(Role role) const;
};

struct BackendConfig {
    std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
    std::string api_key_env = "LLM_API_KEY";
    std::size_t max_in_flight = 4;
    std::size_t max_retries = 3;
    std::chrono::milliseconds backoff_base{500};
    std::chrono::milliseconds timeout{60'000};

    void validate() const;
};

// One attempt against a chat endpoint. Implementations must be thread-safe and
// signal failures with the gateway exception types from error.hpp.
class Backend {
  public:
    virtual ~Backend() = default;
    virtual std::string send(const ChatRequest &request) = 0;
};

enum class ErrorKind { transport, protocol, rate_limited, auth, unclassifiable, invalid_request, other };

std::string_view to_string(ErrorKind kind);

struct CallError {
    ErrorKind kind;
    std::string message;
};

struct CallResult {
    std::size_t index = 0;
    std::optional<std::string> text;
    std::optional<CallError> error;
    std::size_t attempts = 0;

    bool ok() const { return text.has_value(); }
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Delay before retry number `retry` (0-based): base * 2^retry.
std::chrono::milliseconds backoff_delay(std::chrono::milliseconds base, std::size_t retry);

// Retrying front end over a Backend. complete() is thread-safe;
// complete_batch() fans out over at most max_in_flight worker threads.
class Gateway {
  public:
    Gateway(std::shared_ptr<Backend> backend, BackendConfig config, Sleeper sleeper = {});

    // Assistant content of the first choice, verbatim. Transport failures and
    // rate limiting are retried up to max_retries times; other errors surface
    // immediately.
    std::string complete(const ChatRequest &request) const;

    // One result per request, in input order, each tagged with its index.
    // Failures stay local to their item.
    std::vector<CallResult> complete_batch(const std::vector<ChatRequest> &requests) const;

    const BackendConfig &config() const { return config_; }

    // Total backend attempts made through this gateway.
    std::size_t attempts() const { return attempts_.load(); }

  private:
    std::string complete_counted(const ChatRequest &request, std::size_t &attempts) const;

    std::shared_ptr<Backend> backend_;
    BackendConfig config_;
    Sleeper sleeper_;
    mutable std::atomic<std::size_t> attempts_{0};
};

} // namespace cforge::llm
