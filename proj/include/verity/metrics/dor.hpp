/// @file dor.hpp
/// @brief Diagnostic odds ratio with standard error and confidence interval.

#pragma once

#include "verity/core/types.hpp"

namespace verity::metrics {

/// DOR with the log-scale standard error and 95% confidence interval.
/// A DOR of 1 indicates no discrimination; higher is better. The metric is
/// independent of prevalence.
struct DorResult {
    double dor = 0.0;
    double ln_dor = 0.0;
    double se_ln_dor = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool corrected = false;  // continuity correction (+0.5 per cell) applied
};

/// Computes DOR = (tp*tn)/(fp*fn), SE(ln DOR) = sqrt(1/tp+1/fn+1/fp+1/tn),
/// and the 95% CI exp(ln DOR +/- 1.96*SE). When any cell is zero, 0.5 is
/// added to every cell first (Haldane-Anscombe) and the corrected flag is
/// set. Throws EmptyMatrix when total() == 0.
DorResult dor(const core::ConfusionMatrix& cm);

/// (tp + tn) / total. Throws EmptyMatrix when total() == 0.
double accuracy_simple(const core::ConfusionMatrix& cm);

}  // namespace verity::metrics
