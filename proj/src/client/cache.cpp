#include "verity/client/cache.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "verity/core/hash.hpp"
#include "verity/error.hpp"

namespace verity::client {

namespace {

// Doubles are keyed by their bit pattern so formatting can never perturb
// the key.
std::string double_bits_hex(double value) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(value));
    std::memcpy(&bits, &value, sizeof(bits));
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(bits));
    return std::string(buffer);
}

}  // namespace

std::string cache_key(const ModelSpec& spec, const ChatRequest& request) {
    std::ostringstream material;
    material << spec.name << '\x1f' << request.system << '\x1f' << request.user
             << '\x1f' << double_bits_hex(request.temperature) << '\x1f';
    if (request.max_tokens) {
        material << *request.max_tokens;
    } else {
        material << "none";
    }
    return core::fnv1a_hex(material.str());
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<ChatResponse> ResponseCache::get(const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto path = dir_ / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json doc;
    try {
        in >> doc;
        ChatResponse response;
        response.text = doc.at("reply").get<std::string>();
        response.usage.prompt_tokens = doc.at("prompt_tokens").get<std::uint64_t>();
        response.usage.completion_tokens =
            doc.at("completion_tokens").get<std::uint64_t>();
        response.cached = true;
        return response;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // corrupt entry: treat as a miss
    }
}

void ResponseCache::put(const std::string& key, const ChatResponse& response) {
    std::lock_guard lock(mutex_);
    nlohmann::ordered_json doc{
        {"reply", response.text},
        {"prompt_tokens", response.usage.prompt_tokens},
        {"completion_tokens", response.usage.completion_tokens},
    };
    const auto final_path = dir_ / (key + ".json");
    const auto tmp_path = dir_ / (key + ".tmp");
    {
        std::ofstream out(tmp_path);
        if (!out) throw Error("response cache: cannot write " + tmp_path.string());
        out << doc.dump() << '\n';
    }
    std::filesystem::rename(tmp_path, final_path);
}

CachingBackend::CachingBackend(std::shared_ptr<ModelBackend> inner,
                               std::shared_ptr<ResponseCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

ChatResponse CachingBackend::complete(const ChatRequest& request) {
    const std::string key = cache_key(inner_->spec(), request);
    if (auto hit = cache_->get(key)) {
        hits_.fetch_add(1);
        return *hit;
    }
    ChatResponse response = inner_->complete(request);
    cache_->put(key, response);
    return response;
}

}  // namespace verity::client
