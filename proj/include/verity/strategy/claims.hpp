/// @file claims.hpp
/// @brief Claim-extraction strategy: triple extraction, NLI checking, and
/// the factual-accuracy pipeline.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "verity/strategy/strategy.hpp"

namespace verity::strategy {

/// Everything the claim pipeline produced for one summary/response:
/// extracted triples for both sides, per-claim classifications (response
/// claims first, then reference-side Missing claims), the entailment /
/// contradiction proportions, and the accuracy score.
struct SummaryEvaluation {
    std::vector<core::Triple> summary_triples;
    std::vector<core::Triple> reference_triples;
    std::vector<std::pair<core::Triple, core::ClaimClass>> classifications;
    metrics::ClaimStats stats;
    double accuracy = 0.0;
};

/// One extraction call; the reply is parsed one triple per line in the
/// exact format "subject | predicate | object". Malformed lines raise
/// ParseError in strict mode and are skipped with a warning otherwise.
std::vector<core::Triple> extract_claims(const std::string& text,
                                         const StrategyConfig& config,
                                         const PromptLibrary& prompts,
                                         client::ModelBackend& backend,
                                         core::TokenUsage* usage = nullptr,
                                         std::vector<std::string>* warnings = nullptr);

/// One checking call presenting the claim, the reference triples, and the
/// raw reference text as fallback context.
core::ClaimClass check_claim(const core::Triple& claim,
                             std::span<const core::Triple> reference_triples,
                             const std::string& reference_text,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend,
                             core::TokenUsage* usage = nullptr);

/// Classifies pre-extracted response claims against reference claims and
/// scores them; shared by evaluate_summary and claim_evaluate.
SummaryEvaluation classify_and_score(std::vector<core::Triple> summary_triples,
                                     std::vector<core::Triple> reference_triples,
                                     const std::string& reference_text,
                                     const StrategyConfig& config,
                                     const PromptLibrary& prompts,
                                     client::ModelBackend& backend,
                                     core::TokenUsage* usage = nullptr,
                                     std::vector<std::string>* warnings = nullptr);

/// Full pipeline over a summary S and reference R (question optional):
/// extract both sides, classify each response claim, compute proportions
/// and accuracy. An empty response-side extraction scores 0 with a warning;
/// an empty reference-side extraction falls back to the raw reference text.
SummaryEvaluation evaluate_summary(const std::string& summary,
                                   const std::string& reference,
                                   const std::optional<std::string>& question,
                                   const StrategyConfig& config,
                                   const PromptLibrary& prompts,
                                   client::ModelBackend& backend,
                                   core::TokenUsage* usage = nullptr,
                                   std::vector<std::string>* warnings = nullptr);

/// Size-based routing, then the summary pipeline: a side with at least
/// size_threshold_tokens whitespace tokens is triple-extracted, a smaller
/// side becomes one synthetic claim (the whole text). Prediction is Fail
/// iff accuracy < score_threshold.
core::Verdict claim_evaluate(const core::Example& example,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace verity::strategy
