#pragma once

#include "cforge/gateway.hpp"

#include <string>
#include <string_view>

namespace cforge::llm {

// Chat-completions JSON body: {"model","messages":[{"role","content"}],"temperature","max_tokens"}.
std::string request_body(const ChatRequest &request);

// choices[0].message.content; ProtocolError on anything else.
std::string parse_response_body(std::string_view body);

// Reads the key from the environment variable named in config; ConfigError if unset or empty.
std::string read_api_key(const BackendConfig &config);

class HttpBackend : public Backend {
  public:
    HttpBackend(BackendConfig config, std::string api_key);

    std::string send(const ChatRequest &request) override;

  private:
    BackendConfig config_;
    std::string api_key_;
    std::string origin_; // scheme://host[:port]
    std::string path_;
};

} // namespace cforge::llm
