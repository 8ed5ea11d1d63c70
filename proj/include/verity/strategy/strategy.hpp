/// @file strategy.hpp
/// @brief The three detection strategies: grading, judge, claim extraction.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "verity/client/backend.hpp"
#include "verity/core/types.hpp"
#include "verity/metrics/accuracy.hpp"
#include "verity/strategy/grade.hpp"
#include "verity/strategy/prompts.hpp"

namespace verity::strategy {

enum class StrategyKind { Grading, Judge, ClaimExtraction };

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> strategy_kind_from_string(std::string_view text);

struct StrategyConfig {
    std::string id;  // row label in reports
    StrategyKind kind = StrategyKind::Grading;
    std::map<std::string, std::string> prompt_template_ids;  // role -> template id

    // grading
    GradeSet pass_grades = default_pass_grades();

    // claim extraction
    double score_threshold = 0.5;
    metrics::AccuracyWeights weights;
    std::size_t size_threshold_tokens = 30;

    bool strict_parsing = false;

    static StrategyConfig defaults(StrategyKind kind);

    /// Template id for a role, falling back to the kind's default.
    std::string template_id(const std::string& role) const;

    /// Throws ConfigError on invariant violations (empty pass set,
    /// threshold outside (0,1), bad weights).
    void validate() const;
};

/// Parses a reply that must contain exactly one of PASS or FAIL as a whole
/// word, case-insensitively. Throws AmbiguousReply when both appear,
/// ParseError when neither does.
core::Label parse_judge_reply(const std::string& reply);

/// Parses a checker reply to exactly one of ENTAILMENT, CONTRADICTION or
/// NEUTRAL (whole word, case and punctuation tolerant). Throws ParseError.
core::ClaimClass parse_claim_class_reply(const std::string& reply);

// Request builders, shared with the fixture generator so scripted mocks can
// be keyed on exact prompts.
client::ChatRequest make_grading_request(const core::Example& example,
                                         const StrategyConfig& config,
                                         const PromptLibrary& prompts);
client::ChatRequest make_judge_request(const core::Example& example,
                                       const StrategyConfig& config,
                                       const PromptLibrary& prompts);
client::ChatRequest make_extraction_request(const std::string& text,
                                            const StrategyConfig& config,
                                            const PromptLibrary& prompts);
client::ChatRequest make_checking_request(const core::Triple& claim,
                                          std::span<const core::Triple> reference_triples,
                                          const std::string& reference_text,
                                          const StrategyConfig& config,
                                          const PromptLibrary& prompts);

/// "subject | predicate | object"
std::string render_triple(const core::Triple& triple);
std::string render_triples(std::span<const core::Triple> triples);

core::Verdict grade_evaluate(const core::Example& example,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend);

core::Verdict judge_evaluate(const core::Example& example,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend);

/// Dispatches on config.kind. Verdict.usage sums every backend call made
/// for the example; errors are rethrown tagged with the example id.
core::Verdict run_strategy(const core::Example& example,
                           const StrategyConfig& config,
                           const PromptLibrary& prompts,
                           client::ModelBackend& backend,
                           std::vector<std::string>* warnings = nullptr);

}  // namespace verity::strategy
