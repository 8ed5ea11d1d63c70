#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace verity::core {

/// FNV-1a 64-bit. Stable across runs and platforms; used for cache keys and
/// prompt-template fingerprints, not for security.
constexpr std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

/// 16-digit lowercase hex rendering of fnv1a64.
std::string fnv1a_hex(std::string_view text);

}  // namespace verity::core
