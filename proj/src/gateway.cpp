#include "cforge/gateway.hpp"

#include "cforge/error.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace cforge::llm {

std::string_view to_string(Role role) {
    switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
    }
    return "unknown";
}

Role role_from_string(std::string_view s) {
    if (s == "system") return Role::system;
    if (s == "user") return Role::user;
    if (s == "assistant") return Role::assistant;
    throw std::invalid_argument("unknown chat role '" + std::string(s) + "'");
}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::transport: return "transport";
    case ErrorKind::protocol: return "protocol";
    case ErrorKind::rate_limited: return "rate_limited";
    case ErrorKind::auth: return "auth";
    case ErrorKind::unclassifiable: return "unclassifiable";
    case ErrorKind::invalid_request: return "invalid_request";
    case ErrorKind::other: return "other";
    }
    return "other";
}

void ChatRequest::validate() const {
    if (messages.empty()) throw std::invalid_argument("chat request has no messages");
    for (const auto &m : messages) {
        if (m.content.empty()) throw std::invalid_argument("chat message with empty content");
    }
    if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
}

const ChatMessage *ChatRequest::first(Role role) const {
    auto it = std::find_if(messages.begin(), messages.end(), [&](const ChatMessage &m) { return m.role == role; });
    return it == messages.end() ? nullptr : &*it;
}

const ChatMessage *ChatRequest::last(Role role) const {
    auto it = std::find_if(messages.rbegin(), messages.rend(), [&](const ChatMessage &m) { return m.role == role; });
    return it == messages.rend() ? nullptr : &*it;
}

void BackendConfig::validate() const {
    if (max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
    if (backoff_base.count() < 0) throw ConfigError("backoff_base must be >= 0");
    if (timeout.count() <= 0) throw ConfigError("timeout must be > 0");
}

std::chrono::milliseconds backoff_delay(std::chrono::milliseconds base, std::size_t retry) {
    const auto shift = std::min<std::size_t>(retry, 20);
    return base * (std::int64_t{1} << shift);
}

Gateway::Gateway(std::shared_ptr<Backend> backend, BackendConfig config, Sleeper sleeper)
    : backend_(std::move(backend)), config_(std::move(config)), sleeper_(std::move(sleeper)) {
    if (!backend_) throw std::invalid_argument("gateway needs a backend");
    config_.validate();
    if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string Gateway::complete(const ChatRequest &request) const {
    std::size_t attempts = 0;
    return complete_counted(request, attempts);
}

std::string Gateway::complete_counted(const ChatRequest &request, std::size_t &attempts) const {
    request.validate();
    std::chrono::milliseconds previous{-1};
    for (std::size_t retry = 0;; ++retry) {
        std::optional<std::chrono::milliseconds> advised;
        try {
            ++attempts;
            ++attempts_;
            return backend_->send(request);
        } catch (const RateLimited &e) {
            if (retry >= config_.max_retries) throw;
            advised = e.retry_after();
            spdlog::debug("rate limited (attempt {}): {}", attempts, e.what());
        } catch (const TransportError &e) {
            if (retry >= config_.max_retries) throw;
            spdlog::debug("transport error (attempt {}): {}", attempts, e.what());
        }
        // strictly increasing, never shorter than a server-advised delay
        auto delay = backoff_delay(config_.backoff_base, retry);
        if (advised) delay = std::max(delay, *advised);
        delay = std::max(delay, previous + std::chrono::milliseconds{1});
        previous = delay;
        sleeper_(delay);
    }
}

std::vector<CallResult> Gateway::complete_batch(const std::vector<ChatRequest> &requests) const {
    std::vector<CallResult> results(requests.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < requests.size(); i = next++) {
            CallResult &r = results[i];
            r.index = i;
            auto fail = [&](ErrorKind kind, const std::exception &e) { r.error = CallError{kind, e.what()}; };
            try {
                r.text = complete_counted(requests[i], r.attempts);
            } catch (const RateLimited &e) {
                fail(ErrorKind::rate_limited, e);
            } catch (const TransportError &e) {
                fail(ErrorKind::transport, e);
            } catch (const AuthError &e) {
                fail(ErrorKind::auth, e);
            } catch (const ProtocolError &e) {
                fail(ErrorKind::protocol, e);
            } catch (const UnclassifiableRequest &e) {
                fail(ErrorKind::unclassifiable, e);
            } catch (const std::invalid_argument &e) {
                fail(ErrorKind::invalid_request, e);
            } catch (const std::exception &e) {
                fail(ErrorKind::other, e);
            }
        }
    };

    const std::size_t workers = std::min(config_.max_in_flight, requests.size());
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    return results;
}

} // namespace cforge::llm
