/// @file mock.hpp
/// @brief Deterministic scripted backend for offline runs and tests.

#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "verity/client/backend.hpp"

namespace verity::client {

struct MockEntry {
    enum class Match { Exact, Substring };
    Match match = Match::Substring;
    std::string pattern;
    std::string reply;
};

/// Ordered matcher -> reply script. Lenient mode answers with the first
/// matching entry (or default_reply); strict mode requires every request to
/// match exactly one entry.
struct MockScript {
    std::vector<MockEntry> entries;
    bool strict = false;
    std::optional<std::string> default_reply;

    static MockScript load_file(const std::filesystem::path& path);
    void save_file(const std::filesystem::path& path) const;
};

/// Fully deterministic, performs no network activity. Thread-safe.
class MockBackend : public ModelBackend {
public:
    explicit MockBackend(MockScript script, ModelSpec spec = default_spec());

    ChatResponse complete(const ChatRequest& request) override;
    const ModelSpec& spec() const override { return spec_; }
    std::uint64_t calls_made() const override { return calls_.load(); }

    static ModelSpec default_spec();

private:
    MockScript script_;
    ModelSpec spec_;
    std::atomic<std::uint64_t> calls_{0};
};

}  // namespace verity::client
