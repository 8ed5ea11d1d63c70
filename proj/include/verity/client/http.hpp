/// @file http.hpp
/// @brief OpenAI-compatible chat-completions client with retry and backoff.

#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <random>

#include "verity/client/backend.hpp"
#include "verity/client/limiter.hpp"

namespace verity::client {

struct RetryPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{1000};
    double factor = 2.0;
};

/// POSTs to {endpoint}/v1/chat/completions with bearer auth taken from the
/// spec's api_key_env environment variable. Transient failures (connection
/// errors, 429, 5xx) are retried with jittered exponential backoff; other
/// 4xx responses fail immediately. At most spec.max_concurrency requests are
/// in flight at once, admitted fairly.
class HttpBackend : public ModelBackend {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit HttpBackend(ModelSpec spec, RetryPolicy retry = {},
                         Sleeper sleeper = nullptr);

    ChatResponse complete(const ChatRequest& request) override;
    const ModelSpec& spec() const override { return spec_; }
    std::uint64_t calls_made() const override { return calls_.load(); }

private:
    std::chrono::milliseconds backoff_delay(int attempt);

    ModelSpec spec_;
    RetryPolicy retry_;
    Sleeper sleeper_;
    std::string api_key_;
    std::string base_url_;
    std::string path_;
    FairLimiter limiter_;
    std::atomic<std::uint64_t> calls_{0};
    std::mutex rng_mutex_;
    std::mt19937_64 rng_;
};

}  // namespace verity::client
