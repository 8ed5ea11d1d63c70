/// @file fixture.hpp
/// @brief Synthetic examples with paired mock scripts for offline
/// end-to-end runs.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "verity/client/mock.hpp"
#include "verity/core/types.hpp"
#include "verity/strategy/claims.hpp"

namespace verity::data {

struct FixtureOptions {
    strategy::StrategyConfig grading =
        strategy::StrategyConfig::defaults(strategy::StrategyKind::Grading);
    strategy::StrategyConfig judge =
        strategy::StrategyConfig::defaults(strategy::StrategyKind::Judge);
    strategy::StrategyConfig claims =
        strategy::StrategyConfig::defaults(strategy::StrategyKind::ClaimExtraction);
    strategy::PromptLibrary prompts;
    std::string source = "fixture";
};

struct FixtureBundle {
    std::vector<core::Example> examples;
    client::MockScript script;
};

/// Plants the requested confusion matrix: running any of the three
/// strategies over the returned examples with the paired (strict) script
/// recovers exactly `planted`. Deterministic for a given seed.
FixtureBundle generate_fixture(const core::ConfusionMatrix& planted,
                               std::uint64_t seed,
                               const FixtureOptions& options = {});

}  // namespace verity::data
