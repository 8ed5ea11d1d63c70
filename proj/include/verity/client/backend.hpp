/// @file backend.hpp
/// @brief Uniform access to chat-completion model backends.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "verity/core/types.hpp"

namespace verity::client {

/// Identity, endpoint, pricing and limits for one model.
struct ModelSpec {
    std::string name;
    std::string endpoint;        // base URL of an OpenAI-compatible API
    double price_in = 0.0;       // currency per 1M prompt tokens
    double price_out = 0.0;      // currency per 1M completion tokens
    double temperature = 0.0;
    int max_concurrency = 4;
    std::chrono::milliseconds timeout{30000};
    std::string api_key_env = "OPENAI_API_KEY";

    /// Throws ConfigError on negative prices or max_concurrency < 1.
    void validate() const;
};

struct ChatRequest {
    std::string system;
    std::string user;            // never empty
    double temperature = 0.0;
    std::optional<std::uint64_t> max_tokens;
};

struct ChatResponse {
    std::string text;
    core::TokenUsage usage;
    bool cached = false;
};

/// The text a mock script matches against and the cache keys hash over:
/// system and user prompt joined by a blank line.
std::string prompt_text(const ChatRequest& request);

/// Whitespace-token usage estimate for backends that do not report real
/// counts (the mock). Mock runs assert on relative arithmetic, so exactness
/// is irrelevant.
core::TokenUsage estimate_usage(const ChatRequest& request,
                                const std::string& reply);

class ModelBackend {
public:
    virtual ~ModelBackend() = default;

    /// Completes one chat request. Throws BackendError / TimeoutError.
    virtual ChatResponse complete(const ChatRequest& request) = 0;

    virtual const ModelSpec& spec() const = 0;

    /// Number of real completions performed (cache hits excluded).
    virtual std::uint64_t calls_made() const = 0;
};

}  // namespace verity::client
