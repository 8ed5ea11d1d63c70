#include "verity/metrics/accuracy.hpp"

#include <algorithm>

#include "verity/error.hpp"

namespace verity::metrics {

void AccuracyWeights::validate() const {
    if (!(w_e > 0.0)) throw ConfigError("accuracy weights: w_e must be > 0");
    if (!(w_c > 0.0)) throw ConfigError("accuracy weights: w_c must be > 0");
    if (!(w_r >= 0.0)) throw ConfigError("accuracy weights: w_r must be >= 0");
    if (!(epsilon > 0.0 && epsilon <= 0.01)) {
        throw ConfigError("accuracy weights: epsilon must be in (0, 0.01]");
    }
}

double factual_accuracy(const ClaimStats& stats, const AccuracyWeights& weights) {
    if (stats.entailment + stats.contradiction > 1.0 + 1e-12) {
        throw Error("claim stats: entailment + contradiction exceeds 1");
    }
    const double eps = weights.epsilon;
    double numerator = weights.w_e + weights.w_c;
    double denominator = weights.w_e / (stats.entailment + eps) +
                         weights.w_c / (1.0 - stats.contradiction + eps);
    if (weights.w_r > 0.0) {
        numerator += weights.w_r;
        denominator += weights.w_r / (stats.reliability + eps);
    }
    return std::clamp(numerator / denominator, 0.0, 1.0);
}

double factual_accuracy_2term(double entailment, double contradiction,
                              double epsilon) {
    const double a = 2.0 / (1.0 / (entailment + epsilon) +
                            1.0 / (1.0 - contradiction + epsilon));
    return std::clamp(a, 0.0, 1.0);
}

}  // namespace verity::metrics
