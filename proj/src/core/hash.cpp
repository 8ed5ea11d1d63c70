#include "verity/core/hash.hpp"

#include <cstdio>

namespace verity::core {

std::string fnv1a_hex(std::string_view text) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(text)));
    return std::string(buffer);
}

}  // namespace verity::core
