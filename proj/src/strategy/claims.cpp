#include "verity/strategy/claims.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "verity/core/confusion.hpp"
#include "verity/error.hpp"

namespace verity::strategy {

namespace {

void add_usage(core::TokenUsage* usage, const core::TokenUsage& delta) {
    if (usage) *usage += delta;
}

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

std::string fold_case(std::string_view text) {
    std::string out = core::trim(text);
    for (char& ch : out) {
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    return out;
}

bool same_claim(const core::Triple& a, const core::Triple& b) {
    return fold_case(a.subject) == fold_case(b.subject) &&
           fold_case(a.predicate) == fold_case(b.predicate) &&
           fold_case(a.object) == fold_case(b.object);
}

// Routing: a large side is extracted, a small one becomes a single synthetic
// claim, an empty one contributes nothing.
std::vector<core::Triple> route_side(const std::string& text,
                                     const StrategyConfig& config,
                                     const PromptLibrary& prompts,
                                     client::ModelBackend& backend,
                                     core::TokenUsage* usage,
                                     std::vector<std::string>* warnings) {
    if (core::trim(text).empty()) return {};
    if (core::whitespace_token_count(text) >= config.size_threshold_tokens) {
        return extract_claims(text, config, prompts, backend, usage, warnings);
    }
    return {core::Triple{text, "asserts", "", std::nullopt}};
}

}  // namespace

std::vector<core::Triple> extract_claims(const std::string& text,
                                         const StrategyConfig& config,
                                         const PromptLibrary& prompts,
                                         client::ModelBackend& backend,
                                         core::TokenUsage* usage,
                                         std::vector<std::string>* warnings) {
    if (core::trim(text).empty()) {
        throw ConfigError("extract_claims: text must be non-empty");
    }
    const auto request = make_extraction_request(text, config, prompts);
    const auto response = backend.complete(request);
    add_usage(usage, response.usage);

    std::vector<core::Triple> triples;
    std::istringstream lines(response.text);
    std::string raw_line;
    std::size_t line_number = 0;
    while (std::getline(lines, raw_line)) {
        ++line_number;
        const std::string line = core::trim(raw_line);
        if (line.empty()) continue;

        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t bar = line.find('|', start);
            if (bar == std::string::npos) {
                parts.push_back(core::trim(line.substr(start)));
                break;
            }
            parts.push_back(core::trim(line.substr(start, bar - start)));
            start = bar + 1;
        }

        const bool well_formed =
            parts.size() == 3 && !parts[0].empty() && !parts[1].empty();
        if (!well_formed) {
            if (config.strict_parsing) {
                throw ParseError("extract_claims: malformed triple line " +
                                 std::to_string(line_number) + ": '" + line + "'");
            }
            warn(warnings, "extract_claims: skipped malformed line " +
                               std::to_string(line_number) + ": '" + line + "'");
            continue;
        }
        if (parts[2].empty()) {
            warn(warnings, "extract_claims: unary claim (empty object) on line " +
                               std::to_string(line_number));
        }
        triples.push_back(core::Triple{parts[0], parts[1], parts[2], std::nullopt});
    }
    return triples;
}

core::ClaimClass check_claim(const core::Triple& claim,
                             std::span<const core::Triple> reference_triples,
                             const std::string& reference_text,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend,
                             core::TokenUsage* usage) {
    if (core::trim(claim.subject).empty() || core::trim(claim.predicate).empty()) {
        throw ConfigError("check_claim: claim must have subject and predicate");
    }
    const auto request = make_checking_request(claim, reference_triples,
                                               reference_text, config, prompts);
    const auto response = backend.complete(request);
    add_usage(usage, response.usage);
    return parse_claim_class_reply(response.text);
}

SummaryEvaluation classify_and_score(std::vector<core::Triple> summary_triples,
                                     std::vector<core::Triple> reference_triples,
                                     const std::string& reference_text,
                                     const StrategyConfig& config,
                                     const PromptLibrary& prompts,
                                     client::ModelBackend& backend,
                                     core::TokenUsage* usage,
                                     std::vector<std::string>* warnings) {
    SummaryEvaluation evaluation;
    evaluation.summary_triples = std::move(summary_triples);
    evaluation.reference_triples = std::move(reference_triples);

    if (evaluation.summary_triples.empty()) {
        // Nothing extractable from the response: it cannot be verified.
        warn(warnings,
             "claim pipeline: no claims extracted from the response; scoring 0");
        evaluation.accuracy = 0.0;
        return evaluation;
    }
    if (evaluation.reference_triples.empty() && !core::trim(reference_text).empty()) {
        warn(warnings,
             "claim pipeline: no reference triples; checking against raw text only");
    }

    std::size_t entailed = 0;
    std::size_t contradicted = 0;
    for (const auto& claim : evaluation.summary_triples) {
        const auto claim_class =
            check_claim(claim, evaluation.reference_triples, reference_text, config,
                        prompts, backend, usage);
        if (claim_class == core::ClaimClass::Entailment) ++entailed;
        if (claim_class == core::ClaimClass::Contradiction) ++contradicted;
        evaluation.classifications.emplace_back(claim, claim_class);
    }

    const double count = static_cast<double>(evaluation.summary_triples.size());
    evaluation.stats.entailment = static_cast<double>(entailed) / count;
    evaluation.stats.contradiction = static_cast<double>(contradicted) / count;

    // Reference claims with no entailed counterpart are reported as Missing;
    // they never enter the accuracy formula.
    for (const auto& reference : evaluation.reference_triples) {
        const bool covered = std::any_of(
            evaluation.classifications.begin(), evaluation.classifications.end(),
            [&](const auto& entry) {
                return entry.second == core::ClaimClass::Entailment &&
                       same_claim(entry.first, reference);
            });
        if (!covered) {
            evaluation.classifications.emplace_back(reference,
                                                    core::ClaimClass::Missing);
        }
    }

    evaluation.accuracy = metrics::factual_accuracy(evaluation.stats, config.weights);
    return evaluation;
}

SummaryEvaluation evaluate_summary(const std::string& summary,
                                   const std::string& reference,
                                   const std::optional<std::string>& question,
                                   const StrategyConfig& config,
                                   const PromptLibrary& prompts,
                                   client::ModelBackend& backend,
                                   core::TokenUsage* usage,
                                   std::vector<std::string>* warnings) {
    (void)question;  // carried for symmetry with the claim pipeline entry point
    if (core::trim(summary).empty() || core::trim(reference).empty()) {
        throw ConfigError("evaluate_summary: summary and reference must be non-empty");
    }
    auto summary_triples =
        extract_claims(summary, config, prompts, backend, usage, warnings);
    auto reference_triples =
        extract_claims(reference, config, prompts, backend, usage, warnings);
    return classify_and_score(std::move(summary_triples),
                              std::move(reference_triples), reference, config,
                              prompts, backend, usage, warnings);
}

core::Verdict claim_evaluate(const core::Example& example,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend,
                             std::vector<std::string>* warnings) {
    core::TokenUsage usage;
    auto summary_triples =
        route_side(example.response, config, prompts, backend, &usage, warnings);
    auto reference_triples =
        route_side(example.context, config, prompts, backend, &usage, warnings);

    auto evaluation = classify_and_score(
        std::move(summary_triples), std::move(reference_triples), example.context,
        config, prompts, backend, &usage, warnings);

    core::Verdict verdict;
    verdict.prediction = evaluation.accuracy < config.score_threshold
                             ? core::Label::Fail
                             : core::Label::Pass;
    verdict.score = evaluation.accuracy;
    verdict.claims = std::move(evaluation.classifications);
    verdict.usage = usage;
    verdict.strategy = config.id;
    verdict.model = backend.spec().name;
    return verdict;
}

}  // namespace verity::strategy
