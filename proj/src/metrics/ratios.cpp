#include "verity/metrics/ratios.hpp"

#include "verity/error.hpp"

namespace verity::metrics {

std::map<std::string, double> ratio_over_baseline(
    const std::map<std::string, double>& values, const std::string& baseline) {
    auto it = values.find(baseline);
    if (it == values.end()) {
        throw MissingBaseline("ratio_over_baseline: baseline '" + baseline +
                              "' not present");
    }
    const double base = it->second;
    if (!(base > 0.0)) {
        throw NonPositiveBaseline("ratio_over_baseline: baseline '" + baseline +
                                  "' is not positive");
    }
    std::map<std::string, double> ratios;
    for (const auto& [key, value] : values) {
        ratios[key] = key == baseline ? 1.0 : value / base;
    }
    return ratios;
}

double cost_total(std::span<const core::TokenUsage> usages,
                  const ModelPricing& pricing) {
    double cost = 0.0;
    for (const auto& usage : usages) {
        cost += (static_cast<double>(usage.prompt_tokens) * pricing.input +
                 static_cast<double>(usage.completion_tokens) * pricing.output) /
                1e6;
    }
    return cost;
}

}  // namespace verity::metrics
