#include "verity/metrics/dor.hpp"

#include <cmath>

#include "verity/error.hpp"

namespace verity::metrics {

namespace {
constexpr double kZ95 = 1.96;
}

DorResult dor(const core::ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw EmptyMatrix("dor: confusion matrix has no scored examples");
    }

    const bool correct =
        cm.tp == 0 || cm.fp == 0 || cm.fn == 0 || cm.tn == 0;
    const double shift = correct ? 0.5 : 0.0;
    const double tp = static_cast<double>(cm.tp) + shift;
    const double fp = static_cast<double>(cm.fp) + shift;
    const double fn = static_cast<double>(cm.fn) + shift;
    const double tn = static_cast<double>(cm.tn) + shift;

    DorResult result;
    result.corrected = correct;
    result.dor = (tp * tn) / (fp * fn);
    result.ln_dor = std::log(result.dor);
    result.se_ln_dor = std::sqrt(1.0 / tp + 1.0 / fn + 1.0 / fp + 1.0 / tn);
    result.ci_low = std::exp(result.ln_dor - kZ95 * result.se_ln_dor);
    result.ci_high = std::exp(result.ln_dor + kZ95 * result.se_ln_dor);
    return result;
}

double accuracy_simple(const core::ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total == 0) {
        throw EmptyMatrix("accuracy_simple: confusion matrix has no scored examples");
    }
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
}

}  // namespace verity::metrics
