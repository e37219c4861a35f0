#include "cforge/error.hpp"
#include "cforge/gateway.hpp"
#include "cforge/http_backend.hpp"

#include <doctest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

using namespace cforge;
using namespace cforge::llm;
using namespace std::chrono_literals;

namespace {

// Local chat endpoint; `reply` decides the response for each POST.
class FakeEndpoint {
  public:
    using Reply = std::function<void(const httplib::Request &, httplib::Response &)>;

    explicit FakeEndpoint(Reply reply) : reply_(std::move(reply)) {
        server_.Post("/v1/chat/completions", [this](const httplib::Request &req, httplib::Response &res) {
            {
                std::lock_guard lock(mutex_);
                last_body_ = req.body;
                last_auth_ = req.get_header_value("Authorization");
                last_content_type_ = req.get_header_value("Content-Type");
            }
            ++hits;
            reply_(req, res);
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeEndpoint() {
        server_.stop();
        thread_.join();
    }

    BackendConfig config() const {
        BackendConfig c;
        c.endpoint_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
        c.timeout = 5000ms;
        c.max_retries = 2;
        c.backoff_base = 1ms;
        return c;
    }

    std::string last_body() {
        std::lock_guard lock(mutex_);
        return last_body_;
    }
    std::string last_auth() {
        std::lock_guard lock(mutex_);
        return last_auth_;
    }
    std::string last_content_type() {
        std::lock_guard lock(mutex_);
        return last_content_type_;
    }

    std::atomic<int> hits{0};

  private:
    Reply reply_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::mutex mutex_;
    std::string last_body_, last_auth_, last_content_type_;
};

std::string completion(const std::string &content) {
    return nlohmann::json{{"id", "x"}, {"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", content}}}}}}}
        .dump();
}

ChatRequest table_request() {
    ChatRequest r;
    r.messages = {{Role::system, "Generieren Sie an der Eingabeaufforderung 3 separate Sätze"},
                  {Role::user, "Eule"},
                  {Role::assistant, "Gärten und Terrassen;Tacos sind gut.;"}};
    r.temperature = 0.7;
    r.max_output_tokens = 256;
    return r;
}

} // namespace

TEST_CASE("request body uses the chat-completions shape") {
    const auto body = nlohmann::json::parse(request_body(table_request()));
    CHECK(body["model"] == "gpt-3.5-turbo");
    CHECK(body["temperature"] == 0.7);
    CHECK(body["max_tokens"] == 256);
    REQUIRE(body["messages"].size() == 3);
    CHECK(body["messages"][0]["role"] == "system");
    CHECK(body["messages"][1] == nlohmann::json{{"role", "user"}, {"content", "Eule"}});
    CHECK(body["messages"][2]["role"] == "assistant");
}

TEST_CASE("response parsing") {
    CHECK(parse_response_body(completion("Hund, Katze")) == "Hund, Katze");
    CHECK(parse_response_body(completion("")) == "");
    CHECK_THROWS_AS(parse_response_body("<html>"), ProtocolError);
    CHECK_THROWS_AS(parse_response_body(R"({"choices":[]})"), ProtocolError);
    CHECK_THROWS_AS(parse_response_body(R"({"choices":[{"message":{"content":5}}]})"), ProtocolError);
}

TEST_CASE("api key comes from the environment") {
    BackendConfig c;
    c.api_key_env = "CFORGE_TEST_KEY_UNSET";
    ::unsetenv("CFORGE_TEST_KEY_UNSET");
    CHECK_THROWS_AS(read_api_key(c), ConfigError);
    ::setenv("CFORGE_TEST_KEY_UNSET", "sk-test", 1);
    CHECK(read_api_key(c) == "sk-test");
    ::unsetenv("CFORGE_TEST_KEY_UNSET");
}

TEST_CASE("endpoint url validation") {
    BackendConfig c;
    c.endpoint_url = "ftp://example.org";
    CHECK_THROWS_AS(HttpBackend(c, "k"), ConfigError);
}

TEST_CASE("successful round trip over HTTP") {
    FakeEndpoint endpoint([](const httplib::Request &, httplib::Response &res) {
        res.set_content(completion("Der Hund bellt.;Die Katze schläft.;"), "application/json");
    });
    Gateway g(std::make_shared<HttpBackend>(endpoint.config(), "sk-secret"), endpoint.config());
    CHECK(g.complete(table_request()) == "Der Hund bellt.;Die Katze schläft.;");
    CHECK(endpoint.last_auth() == "Bearer sk-secret");
    CHECK(endpoint.last_content_type() == "application/json");
    CHECK(nlohmann::json::parse(endpoint.last_body()) == nlohmann::json::parse(request_body(table_request())));
}

TEST_CASE("401 is an auth error and is not retried") {
    FakeEndpoint endpoint([](const httplib::Request &, httplib::Response &res) {
        res.status = 401;
        res.set_content(R"({"error":"bad key"})", "application/json");
    });
    Gateway g(std::make_shared<HttpBackend>(endpoint.config(), "k"), endpoint.config());
    CHECK_THROWS_AS(g.complete(table_request()), AuthError);
    CHECK(endpoint.hits == 1);
}

TEST_CASE("429 Retry-After is passed to the retry loop") {
    std::atomic<int> n{0};
    FakeEndpoint endpoint([&](const httplib::Request &, httplib::Response &res) {
        if (n++ == 0) {
            res.status = 429;
            res.set_header("Retry-After", "2");
            return;
        }
        res.set_content(completion("ok"), "application/json");
    });
    std::vector<std::chrono::milliseconds> delays;
    Gateway g(std::make_shared<HttpBackend>(endpoint.config(), "k"), endpoint.config(),
              [&](std::chrono::milliseconds d) { delays.push_back(d); });
    CHECK(g.complete(table_request()) == "ok");
    REQUIRE(delays.size() == 1);
    CHECK(delays[0] == 2000ms);
}

TEST_CASE("5xx is retried as a transport error") {
    std::atomic<int> n{0};
    FakeEndpoint endpoint([&](const httplib::Request &, httplib::Response &res) {
        if (n++ < 2) {
            res.status = 503;
            return;
        }
        res.set_content(completion("recovered"), "application/json");
    });
    Gateway g(std::make_shared<HttpBackend>(endpoint.config(), "k"), endpoint.config(), [](auto) {});
    CHECK(g.complete(table_request()) == "recovered");
    CHECK(endpoint.hits == 3);
}

TEST_CASE("malformed body is a protocol error") {
    FakeEndpoint endpoint([](const httplib::Request &, httplib::Response &res) {
        res.set_content("not json at all", "text/plain");
    });
    Gateway g(std::make_shared<HttpBackend>(endpoint.config(), "k"), endpoint.config(), [](auto) {});
    CHECK_THROWS_AS(g.complete(table_request()), ProtocolError);
    CHECK(endpoint.hits == 1);
}

TEST_CASE("unreachable endpoint is a transport error") {
    BackendConfig c;
    {
        FakeEndpoint endpoint([](const httplib::Request &, httplib::Response &) {});
        c = endpoint.config();
    }
    c.max_retries = 1;
    c.timeout = 500ms;
    int sleeps = 0;
    Gateway g(std::make_shared<HttpBackend>(c, "k"), c, [&](auto) { ++sleeps; });
    CHECK_THROWS_AS(g.complete(table_request()), TransportError);
    CHECK(sleeps == 1);
}
