#include "verity/metrics/calibrate.hpp"

#include <algorithm>
#include <set>

#include "verity/error.hpp"
#include "verity/metrics/dor.hpp"

namespace verity::metrics {

namespace {

core::ConfusionMatrix matrix_at_threshold(
    std::span<const std::pair<double, core::Label>> scored, double threshold) {
    core::ConfusionMatrix cm;
    for (const auto& [score, gold] : scored) {
        const bool predicted_fail = score < threshold;
        if (predicted_fail) {
            gold == core::Label::Fail ? ++cm.tp : ++cm.fp;
        } else {
            gold == core::Label::Fail ? ++cm.fn : ++cm.tn;
        }
    }
    return cm;
}

}  // namespace

double calibrate_threshold(
    std::span<const std::pair<double, core::Label>> scored,
    std::vector<std::string>* warnings) {
    if (scored.empty()) {
        throw EmptyInput("calibrate_threshold: no scored examples");
    }

    std::set<double> distinct;
    bool saw_pass = false;
    bool saw_fail = false;
    for (const auto& [score, gold] : scored) {
        distinct.insert(score);
        (gold == core::Label::Pass ? saw_pass : saw_fail) = true;
    }
    if (warnings && (!saw_pass || !saw_fail)) {
        warnings->push_back(
            "calibrate_threshold: only one gold label present; calibration is unreliable");
    }
    if (distinct.size() == 1) {
        if (warnings) {
            warnings->push_back(
                "calibrate_threshold: degenerate calibration, all scores equal; "
                "no separating threshold exists");
        }
        return 0.0;
    }

    std::vector<double> candidates{0.0, 1.0};
    for (auto it = distinct.begin(); std::next(it) != distinct.end(); ++it) {
        candidates.push_back((*it + *std::next(it)) / 2.0);
    }
    std::sort(candidates.begin(), candidates.end());

    double best_threshold = candidates.front();
    double best_dor = -1.0;
    for (double candidate : candidates) {
        const double d = dor(matrix_at_threshold(scored, candidate)).dor;
        if (d > best_dor) {
            best_dor = d;
            best_threshold = candidate;
        }
    }
    return best_threshold;
}

}  // namespace verity::metrics
