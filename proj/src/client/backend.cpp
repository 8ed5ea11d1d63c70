#include "verity/client/backend.hpp"

#include "verity/core/confusion.hpp"
#include "verity/error.hpp"

namespace verity::client {

void ModelSpec::validate() const {
    if (name.empty()) throw ConfigError("model spec: name must be non-empty");
    if (price_in < 0.0 || price_out < 0.0) {
        throw ConfigError("model spec '" + name + "': prices must be >= 0");
    }
    if (max_concurrency < 1) {
        throw ConfigError("model spec '" + name + "': max_concurrency must be >= 1");
    }
}

std::string prompt_text(const ChatRequest& request) {
    if (request.system.empty()) return request.user;
    return request.system + "\n\n" + request.user;
}

core::TokenUsage estimate_usage(const ChatRequest& request,
                                const std::string& reply) {
    core::TokenUsage usage;
    usage.prompt_tokens = core::whitespace_token_count(request.system) +
                          core::whitespace_token_count(request.user);
    usage.completion_tokens = core::whitespace_token_count(reply);
    return usage;
}

}  // namespace verity::client
