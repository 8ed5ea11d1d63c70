/// @file cache.hpp
/// @brief Content-addressed on-disk response cache.

#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "verity/client/backend.hpp"

namespace verity::client {

/// Stable content hash over (model name, system, user, temperature,
/// max_tokens). Identical inputs yield identical keys across runs and
/// platforms.
std::string cache_key(const ModelSpec& spec, const ChatRequest& request);

/// One file per key; content is the reply text plus the usage record.
/// Safe under concurrent readers and writers.
class ResponseCache {
public:
    explicit ResponseCache(std::filesystem::path dir);

    std::optional<ChatResponse> get(const std::string& key) const;
    void put(const std::string& key, const ChatResponse& response);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
};

/// Consults the cache before delegating to the wrapped backend. Hits replay
/// the stored reply and usage at zero incremental cost.
class CachingBackend : public ModelBackend {
public:
    CachingBackend(std::shared_ptr<ModelBackend> inner,
                   std::shared_ptr<ResponseCache> cache);

    ChatResponse complete(const ChatRequest& request) override;
    const ModelSpec& spec() const override { return inner_->spec(); }
    std::uint64_t calls_made() const override { return inner_->calls_made(); }

    std::uint64_t cache_hits() const { return hits_.load(); }

private:
    std::shared_ptr<ModelBackend> inner_;
    std::shared_ptr<ResponseCache> cache_;
    std::atomic<std::uint64_t> hits_{0};
};

}  // namespace verity::client
