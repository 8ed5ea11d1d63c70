#include "verity/client/mock.hpp"

#include <fstream>

#include <json.hpp>

#include "verity/error.hpp"

namespace verity::client {

namespace {

bool entry_matches(const MockEntry& entry, const std::string& target) {
    if (entry.match == MockEntry::Match::Exact) return entry.pattern == target;
    return target.find(entry.pattern) != std::string::npos;
}

}  // namespace

MockScript MockScript::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("mock script: cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("mock script " + path.string() + ": " + e.what());
    }

    MockScript script;
    script.strict = doc.value("strict", false);
    if (doc.contains("default_reply")) {
        script.default_reply = doc.at("default_reply").get<std::string>();
    }
    for (const auto& item : doc.value("entries", nlohmann::json::array())) {
        MockEntry entry;
        const std::string match = item.value("match", "substring");
        if (match == "exact") {
            entry.match = MockEntry::Match::Exact;
        } else if (match == "substring") {
            entry.match = MockEntry::Match::Substring;
        } else {
            throw ConfigError("mock script: unknown match kind '" + match + "'");
        }
        entry.pattern = item.at("pattern").get<std::string>();
        entry.reply = item.at("reply").get<std::string>();
        script.entries.push_back(std::move(entry));
    }
    return script;
}

void MockScript::save_file(const std::filesystem::path& path) const {
    nlohmann::ordered_json doc;
    doc["strict"] = strict;
    if (default_reply) doc["default_reply"] = *default_reply;
    auto& items = doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& entry : entries) {
        items.push_back({
            {"match", entry.match == MockEntry::Match::Exact ? "exact" : "substring"},
            {"pattern", entry.pattern},
            {"reply", entry.reply},
        });
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("mock script: cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

ModelSpec MockBackend::default_spec() {
    ModelSpec spec;
    spec.name = "mock";
    spec.max_concurrency = 64;
    return spec;
}

MockBackend::MockBackend(MockScript script, ModelSpec spec)
    : script_(std::move(script)), spec_(std::move(spec)) {}

ChatResponse MockBackend::complete(const ChatRequest& request) {
    calls_.fetch_add(1);
    const std::string target = prompt_text(request);

    const MockEntry* found = nullptr;
    std::size_t matches = 0;
    for (const auto& entry : script_.entries) {
        if (entry_matches(entry, target)) {
            ++matches;
            if (!found) found = &entry;
            if (!script_.strict) break;
        }
    }

    if (script_.strict && matches != 1) {
        throw BackendError(matches == 0
                               ? "mock backend: unscripted request"
                               : "mock backend: request matches " +
                                     std::to_string(matches) + " script entries");
    }

    std::string reply;
    if (found) {
        reply = found->reply;
    } else if (script_.default_reply) {
        reply = *script_.default_reply;
    } else {
        throw BackendError("mock backend: unscripted request");
    }

    ChatResponse response;
    response.text = reply;
    response.usage = estimate_usage(request, reply);
    response.cached = false;
    return response;
}

}  // namespace verity::client
