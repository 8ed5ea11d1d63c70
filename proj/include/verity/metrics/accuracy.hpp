/// @file accuracy.hpp
/// @brief Weighted factual-accuracy score over claim classification stats.

#pragma once

#include <vector>

namespace verity::metrics {

/// Weights for the factual-accuracy harmonic mean. Reliability (w_r) is
/// optional and disabled by default.
struct AccuracyWeights {
    double w_e = 1.0;
    double w_c = 1.0;
    double w_r = 0.0;
    double epsilon = 1e-4;

    /// Throws ConfigError unless w_e > 0, w_c > 0, w_r >= 0 and
    /// 0 < epsilon <= 0.01.
    void validate() const;
};

/// Proportions over one response's claim set. entailment + contradiction
/// never exceeds 1: they are disjoint subsets of the same claims.
struct ClaimStats {
    double entailment = 0.0;
    double contradiction = 0.0;
    double reliability = 0.0;
};

/// Weighted harmonic-mean accuracy:
///   A = (w_e + w_c + w_r) /
///       (w_e*(E+eps)^-1 + w_c*(1-C+eps)^-1 + w_r*(R+eps)^-1)
/// clamped into [0,1]. With w_r = 0 the reliability term is omitted
/// entirely. Strictly increasing in E, strictly decreasing in C.
double factual_accuracy(const ClaimStats& stats, const AccuracyWeights& weights);

/// Two-term form A = 2 / ((E+eps)^-1 + (1-C+eps)^-1), clamped into [0,1].
/// Algebraically equals factual_accuracy with w = (1,1,0); kept as an
/// independent route so the two can cross-check each other.
double factual_accuracy_2term(double entailment, double contradiction,
                              double epsilon);

}  // namespace verity::metrics
