#include "verity/data/prevalence.hpp"

namespace verity::data {

PrevalenceStats prevalence(std::span<const core::Example> examples) {
    PrevalenceStats stats;
    for (const auto& example : examples) {
        auto& counts = stats.per_source[example.source];
        if (example.label == core::Label::Fail) {
            ++counts.fail;
            ++stats.overall.fail;
        } else {
            ++counts.pass;
            ++stats.overall.pass;
        }
    }
    return stats;
}

}  // namespace verity::data
