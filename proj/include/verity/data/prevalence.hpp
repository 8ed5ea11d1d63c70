#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "verity/core/types.hpp"

namespace verity::data {

struct SourceCounts {
    std::uint64_t pass = 0;
    std::uint64_t fail = 0;

    std::uint64_t total() const { return pass + fail; }

    /// Fraction of FAIL-labeled (hallucinatory) examples.
    double prevalence() const {
        return total() == 0 ? 0.0
                            : static_cast<double>(fail) / static_cast<double>(total());
    }
};

struct PrevalenceStats {
    std::map<std::string, SourceCounts> per_source;
    SourceCounts overall;
};

PrevalenceStats prevalence(std::span<const core::Example> examples);

}  // namespace verity::data
