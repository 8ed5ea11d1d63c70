#pragma once

#include <map>
#include <span>
#include <string>

#include "verity/core/types.hpp"

namespace verity::metrics {

/// Prices in currency units per 1M tokens.
struct ModelPricing {
    double input = 0.0;
    double output = 0.0;
};

/// Divides every value by the baseline's value; the baseline maps to 1.0.
/// Throws MissingBaseline / NonPositiveBaseline.
std::map<std::string, double> ratio_over_baseline(
    const std::map<std::string, double>& values, const std::string& baseline);

/// Total cost: sum(prompt*input + completion*output) / 1e6. Additive over
/// concatenated usage lists.
double cost_total(std::span<const core::TokenUsage> usages,
                  const ModelPricing& pricing);

}  // namespace verity::metrics
