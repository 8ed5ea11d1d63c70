#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "verity/core/types.hpp"

namespace verity::metrics {

/// Picks the score threshold maximizing continuity-corrected DOR, where an
/// example is predicted Fail iff its score < threshold. Candidates are the
/// midpoints between adjacent distinct scores plus {0, 1}; ties break toward
/// the lowest threshold. When every score is identical no separating
/// threshold exists: returns 0 and appends a degenerate-calibration warning.
/// Throws EmptyInput on an empty list; warns when a gold class is absent.
double calibrate_threshold(
    std::span<const std::pair<double, core::Label>> scored,
    std::vector<std::string>* warnings = nullptr);

}  // namespace verity::metrics
