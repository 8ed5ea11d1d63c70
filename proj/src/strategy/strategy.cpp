#include "verity/strategy/strategy.hpp"

#include <cctype>

#include "verity/core/confusion.hpp"
#include "verity/error.hpp"
#include "verity/strategy/claims.hpp"

namespace verity::strategy {

namespace {

bool contains_word(const std::string& haystack, std::string_view word) {
    std::string lower = haystack;
    for (char& ch : lower) {
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    std::size_t pos = 0;
    while ((pos = lower.find(word, pos)) != std::string::npos) {
        const bool left_ok =
            pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
        const std::size_t end = pos + word.size();
        const bool right_ok =
            end >= lower.size() || !std::isalnum(static_cast<unsigned char>(lower[end]));
        if (left_ok && right_ok) return true;
        pos = end;
    }
    return false;
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Grading: return "grading";
        case StrategyKind::Judge: return "judge";
        case StrategyKind::ClaimExtraction: return "claim_extraction";
    }
    return "unknown";
}

std::optional<StrategyKind> strategy_kind_from_string(std::string_view text) {
    if (text == "grading") return StrategyKind::Grading;
    if (text == "judge") return StrategyKind::Judge;
    if (text == "claim_extraction") return StrategyKind::ClaimExtraction;
    return std::nullopt;
}

StrategyConfig StrategyConfig::defaults(StrategyKind kind) {
    StrategyConfig config;
    config.kind = kind;
    config.id = std::string(to_string(kind));
    return config;
}

std::string StrategyConfig::template_id(const std::string& role) const {
    auto it = prompt_template_ids.find(role);
    if (it != prompt_template_ids.end()) return it->second;
    switch (kind) {
        case StrategyKind::Grading:
            if (role == "system") return "grading_system";
            if (role == "user") return "grading_user";
            break;
        case StrategyKind::Judge:
            if (role == "system") return "judge_system";
            if (role == "user") return "judge_user";
            break;
        case StrategyKind::ClaimExtraction:
            if (role == "extraction_system") return "extraction_system";
            if (role == "extraction_user") return "extraction_user";
            if (role == "checking_system") return "checking_system";
            if (role == "checking_user") return "checking_user";
            break;
    }
    throw ConfigError("strategy '" + id + "': no template for role '" + role + "'");
}

void StrategyConfig::validate() const {
    if (id.empty()) throw ConfigError("strategy config: id must be non-empty");
    if (kind == StrategyKind::Grading && pass_grades.empty()) {
        throw ConfigError("strategy '" + id + "': pass_grades must be non-empty");
    }
    if (kind == StrategyKind::ClaimExtraction) {
        if (!(score_threshold > 0.0 && score_threshold < 1.0)) {
            throw ConfigError("strategy '" + id +
                              "': score_threshold must be in (0, 1)");
        }
        weights.validate();
    }
}

core::Label parse_judge_reply(const std::string& reply) {
    const bool has_pass = contains_word(reply, "pass");
    const bool has_fail = contains_word(reply, "fail");
    if (has_pass && has_fail) {
        throw AmbiguousReply("judge reply contains both PASS and FAIL");
    }
    if (has_pass) return core::Label::Pass;
    if (has_fail) return core::Label::Fail;
    throw ParseError("judge reply contains neither PASS nor FAIL");
}

core::ClaimClass parse_claim_class_reply(const std::string& reply) {
    const bool e = contains_word(reply, "entailment");
    const bool c = contains_word(reply, "contradiction");
    const bool n = contains_word(reply, "neutral");
    const int found = int(e) + int(c) + int(n);
    if (found != 1) {
        throw ParseError(found == 0
                             ? "checker reply names no claim class"
                             : "checker reply names multiple claim classes");
    }
    if (e) return core::ClaimClass::Entailment;
    if (c) return core::ClaimClass::Contradiction;
    return core::ClaimClass::Neutral;
}

client::ChatRequest make_grading_request(const core::Example& example,
                                         const StrategyConfig& config,
                                         const PromptLibrary& prompts) {
    client::ChatRequest request;
    request.system = prompts.get(config.template_id("system"));
    request.user = PromptLibrary::render(prompts.get(config.template_id("user")),
                                         {{"question", example.question},
                                          {"context", example.context},
                                          {"response", example.response}});
    return request;
}

client::ChatRequest make_judge_request(const core::Example& example,
                                       const StrategyConfig& config,
                                       const PromptLibrary& prompts) {
    client::ChatRequest request;
    request.system = prompts.get(config.template_id("system"));
    request.user = PromptLibrary::render(prompts.get(config.template_id("user")),
                                         {{"question", example.question},
                                          {"context", example.context},
                                          {"response", example.response}});
    return request;
}

client::ChatRequest make_extraction_request(const std::string& text,
                                            const StrategyConfig& config,
                                            const PromptLibrary& prompts) {
    client::ChatRequest request;
    request.system = prompts.get(config.template_id("extraction_system"));
    request.user = PromptLibrary::render(
        prompts.get(config.template_id("extraction_user")), {{"response", text}});
    return request;
}

client::ChatRequest make_checking_request(const core::Triple& claim,
                                          std::span<const core::Triple> reference_triples,
                                          const std::string& reference_text,
                                          const StrategyConfig& config,
                                          const PromptLibrary& prompts) {
    client::ChatRequest request;
    request.system = prompts.get(config.template_id("checking_system"));
    request.user = PromptLibrary::render(
        prompts.get(config.template_id("checking_user")),
        {{"claim", render_triple(claim)},
         {"reference_triples", render_triples(reference_triples)},
         {"context", reference_text}});
    return request;
}

std::string render_triple(const core::Triple& triple) {
    return triple.subject + " | " + triple.predicate + " | " + triple.object;
}

std::string render_triples(std::span<const core::Triple> triples) {
    std::string out;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        if (i > 0) out.push_back('\n');
        out += render_triple(triples[i]);
    }
    return out;
}

core::Verdict grade_evaluate(const core::Example& example,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend) {
    const auto request = make_grading_request(example, config, prompts);
    const auto response = backend.complete(request);

    core::Verdict verdict;
    verdict.usage = response.usage;
    verdict.strategy = config.id;
    verdict.model = backend.spec().name;

    const Grade grade = parse_grade(response.text);
    verdict.prediction = config.pass_grades.count(grade) ? core::Label::Pass
                                                         : core::Label::Fail;
    return verdict;
}

core::Verdict judge_evaluate(const core::Example& example,
                             const StrategyConfig& config,
                             const PromptLibrary& prompts,
                             client::ModelBackend& backend) {
    const auto request = make_judge_request(example, config, prompts);
    const auto response = backend.complete(request);

    core::Verdict verdict;
    verdict.usage = response.usage;
    verdict.strategy = config.id;
    verdict.model = backend.spec().name;
    verdict.prediction = parse_judge_reply(response.text);
    return verdict;
}

core::Verdict run_strategy(const core::Example& example,
                           const StrategyConfig& config,
                           const PromptLibrary& prompts,
                           client::ModelBackend& backend,
                           std::vector<std::string>* warnings) {
    if (auto bad = example.invalid_field()) {
        throw ConfigError("example '" + example.id + "': invalid field '" + *bad +
                          "' for task " + std::string(to_string(example.task)));
    }
    try {
        switch (config.kind) {
            case StrategyKind::Grading:
                return grade_evaluate(example, config, prompts, backend);
            case StrategyKind::Judge:
                return judge_evaluate(example, config, prompts, backend);
            case StrategyKind::ClaimExtraction:
                return claim_evaluate(example, config, prompts, backend, warnings);
        }
        throw ConfigError("strategy '" + config.id + "': unknown kind");
    } catch (const AmbiguousReply& e) {
        throw AmbiguousReply("[example " + example.id + "] " + e.what());
    } catch (const ParseError& e) {
        throw ParseError("[example " + example.id + "] " + e.what());
    } catch (const TimeoutError& e) {
        throw TimeoutError("[example " + example.id + "] " + e.what(), e.attempts());
    } catch (const BackendError& e) {
        throw BackendError("[example " + example.id + "] " + e.what(), e.status(),
                           e.attempts());
    }
}

}  // namespace verity::strategy
