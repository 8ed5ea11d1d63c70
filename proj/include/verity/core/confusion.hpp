#pragma once

#include <span>
#include <utility>

#include "verity/core/types.hpp"

namespace verity::core {

/// Counts (predicted, gold) pairs into a confusion matrix. Empty input
/// yields the all-zero matrix. Permutation-invariant.
ConfusionMatrix confusion_from_pairs(
    std::span<const std::pair<Label, Label>> pairs);

/// Cellwise sum. Associative and commutative; the zero matrix is the
/// identity.
ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b);

/// Trims ASCII whitespace from both ends.
std::string trim(std::string_view text);

/// Number of whitespace-separated tokens; used by the size-based routing
/// rule in the claim-extraction strategy.
std::size_t whitespace_token_count(std::string_view text);

}  // namespace verity::core
