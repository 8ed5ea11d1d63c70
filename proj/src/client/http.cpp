#include "verity/client/http.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "verity/error.hpp"

namespace verity::client {

namespace {

using nlohmann::json;

// Splits "https://host:port/some/base" into base URL and path prefix.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("http backend: endpoint must include a scheme: " + endpoint);
    }
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, ""};
    std::string path = endpoint.substr(path_start);
    if (path == "/") path.clear();
    return {endpoint.substr(0, path_start), path};
}

bool transient_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

HttpBackend::HttpBackend(ModelSpec spec, RetryPolicy retry, Sleeper sleeper)
    : spec_(std::move(spec)),
      retry_(retry),
      sleeper_(std::move(sleeper)),
      limiter_(spec_.max_concurrency),
      rng_(std::random_device{}()) {
    spec_.validate();
    if (spec_.endpoint.empty()) {
        throw ConfigError("http backend: model '" + spec_.name + "' has no endpoint");
    }
    auto [base, path] = split_endpoint(spec_.endpoint);
    base_url_ = base;
    path_ = path + "/v1/chat/completions";
    if (const char* key = std::getenv(spec_.api_key_env.c_str())) {
        api_key_ = key;
    }
    if (!sleeper_) {
        sleeper_ = [](std::chrono::milliseconds delay) {
            std::this_thread::sleep_for(delay);
        };
    }
}

std::chrono::milliseconds HttpBackend::backoff_delay(int attempt) {
    const double nominal =
        static_cast<double>(retry_.base_delay.count()) *
        std::pow(retry_.factor, static_cast<double>(attempt - 1));
    double jitter;
    {
        std::lock_guard lock(rng_mutex_);
        jitter = std::uniform_real_distribution<double>(0.5, 1.5)(rng_);
    }
    return std::chrono::milliseconds(static_cast<long long>(nominal * jitter));
}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
    if (request.user.empty()) {
        throw ConfigError("http backend: chat request has an empty user prompt");
    }

    json body;
    body["model"] = spec_.name;
    body["temperature"] = request.temperature;
    if (request.max_tokens) body["max_tokens"] = *request.max_tokens;
    auto messages = json::array();
    if (!request.system.empty()) {
        messages.push_back({{"role", "system"}, {"content", request.system}});
    }
    messages.push_back({{"role", "user"}, {"content", request.user}});
    body["messages"] = std::move(messages);
    const std::string payload = body.dump();

    httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};

    FairLimiter::Guard guard(limiter_);
    std::string last_failure;
    bool last_was_timeout = false;
    for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
        httplib::Client http(base_url_);
        http.set_connection_timeout(spec_.timeout);
        http.set_read_timeout(spec_.timeout);
        http.set_write_timeout(spec_.timeout);

        calls_.fetch_add(1);
        auto result = http.Post(path_, headers, payload, "application/json");

        if (!result) {
            last_was_timeout = result.error() == httplib::Error::ConnectionTimeout ||
                               result.error() == httplib::Error::Read ||
                               result.error() == httplib::Error::Write;
            last_failure = "transport error: " + httplib::to_string(result.error());
        } else if (result->status == 200) {
            try {
                const json reply = json::parse(result->body);
                ChatResponse response;
                response.text =
                    reply.at("choices").at(0).at("message").at("content").get<std::string>();
                if (reply.contains("usage")) {
                    const auto& usage = reply.at("usage");
                    response.usage.prompt_tokens =
                        usage.value("prompt_tokens", std::uint64_t{0});
                    response.usage.completion_tokens =
                        usage.value("completion_tokens", std::uint64_t{0});
                }
                return response;
            } catch (const json::exception& e) {
                throw BackendError("http backend: malformed completion payload: " +
                                       std::string(e.what()),
                                   result->status, attempt);
            }
        } else if (!transient_status(result->status)) {
            throw BackendError("http backend: request failed with status " +
                                   std::to_string(result->status),
                               result->status, attempt);
        } else {
            last_was_timeout = false;
            last_failure = "status " + std::to_string(result->status);
        }

        if (attempt < retry_.max_attempts) {
            sleeper_(backoff_delay(attempt));
        }
    }

    if (last_was_timeout) {
        throw TimeoutError("http backend: timed out after " +
                               std::to_string(retry_.max_attempts) + " attempts",
                           retry_.max_attempts);
    }
    throw BackendError("http backend: exhausted retries (" + last_failure + ")",
                       0, retry_.max_attempts);
}

}  // namespace verity::client
