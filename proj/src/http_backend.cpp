#include "cforge/http_backend.hpp"

#include "cforge/error.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <regex>

namespace cforge::llm {

std::string request_body(const ChatRequest &request) {
    nlohmann::ordered_json body;
    body["model"] = request.model_name;
    body["messages"] = nlohmann::ordered_json::array();
    for (const auto &m : request.messages) {
        body["messages"].push_back({{"role", to_string(m.role)}, {"content", m.content}});
    }
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_output_tokens;
    return body.dump();
}

std::string parse_response_body(std::string_view body) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error &e) {
        throw ProtocolError(std::string("response is not JSON: ") + e.what());
    }
    try {
        const auto &content = doc.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) throw ProtocolError("choices[0].message.content is not a string");
        return content.get<std::string>();
    } catch (const nlohmann::json::exception &e) {
        throw ProtocolError(std::string("missing choices[0].message.content: ") + e.what());
    }
}

std::string read_api_key(const BackendConfig &config) {
    const char *value = std::getenv(config.api_key_env.c_str());
    if (value == nullptr || *value == '\0') {
        throw ConfigError("environment variable " + config.api_key_env + " is not set");
    }
    return value;
}

HttpBackend::HttpBackend(BackendConfig config, std::string api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
    static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(config_.endpoint_url, m, url_re)) {
        throw ConfigError("endpoint_url must be an http(s) URL: '" + config_.endpoint_url + "'");
    }
    origin_ = m[1].str();
    path_ = m[2].matched ? m[2].str() : "/";
}

namespace {

std::optional<std::chrono::milliseconds> parse_retry_after(const httplib::Response &res) {
    if (!res.has_header("Retry-After")) return std::nullopt;
    const std::string value = res.get_header_value("Retry-After");
    char *end = nullptr;
    const double seconds = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || seconds < 0) return std::nullopt;
    return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

} // namespace

std::string HttpBackend::send(const ChatRequest &request) {
    httplib::Client client(origin_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
    auto res = client.Post(path_, headers, request_body(request), "application/json");
    if (!res) {
        throw TransportError("POST " + config_.endpoint_url + " failed: " + httplib::to_string(res.error()));
    }
    const int status = res->status;
    if (status == 200) return parse_response_body(res->body);
    const std::string detail = "HTTP " + std::to_string(status) + " from " + config_.endpoint_url;
    if (status == 401 || status == 403) throw AuthError(detail);
    if (status == 429) throw RateLimited(detail, parse_retry_after(*res));
    if (status == 408 || status >= 500) throw TransportError(detail);
    throw ProtocolError(detail + ": " + res->body.substr(0, 200));
}

} // namespace cforge::llm
