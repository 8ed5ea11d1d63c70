#include "verity/core/types.hpp"

#include "verity/core/confusion.hpp"

namespace verity::core {

std::string_view to_string(TaskKind task) {
    switch (task) {
        case TaskKind::ZeroContextQA: return "zero_context_qa";
        case TaskKind::RagQA: return "rag_qa";
        case TaskKind::Summarization: return "summarization";
    }
    return "unknown";
}

std::string_view to_string(Label label) {
    return label == Label::Pass ? "PASS" : "FAIL";
}

std::optional<TaskKind> task_from_string(std::string_view text) {
    if (text == "zero_context_qa") return TaskKind::ZeroContextQA;
    if (text == "rag_qa") return TaskKind::RagQA;
    if (text == "summarization") return TaskKind::Summarization;
    return std::nullopt;
}

std::optional<Label> label_from_string(std::string_view text) {
    if (text == "PASS") return Label::Pass;
    if (text == "FAIL") return Label::Fail;
    return std::nullopt;
}

std::string_view to_string(ClaimClass c) {
    switch (c) {
        case ClaimClass::Entailment: return "entailment";
        case ClaimClass::Contradiction: return "contradiction";
        case ClaimClass::Neutral: return "neutral";
        case ClaimClass::Missing: return "missing";
    }
    return "unknown";
}

std::optional<ClaimClass> claim_class_from_string(std::string_view text) {
    if (text == "entailment") return ClaimClass::Entailment;
    if (text == "contradiction") return ClaimClass::Contradiction;
    if (text == "neutral") return ClaimClass::Neutral;
    if (text == "missing") return ClaimClass::Missing;
    return std::nullopt;
}

std::optional<std::string> Example::invalid_field() const {
    const bool has_question = !trim(question).empty();
    const bool has_context = !trim(context).empty();
    const bool has_response = !trim(response).empty();

    if (!has_response) return "response";
    switch (task) {
        case TaskKind::Summarization:
            if (!has_context) return "context";
            break;
        case TaskKind::RagQA:
            if (!has_question) return "question";
            if (!has_context) return "context";
            break;
        case TaskKind::ZeroContextQA:
            if (!has_question) return "question";
            if (has_context) return "context";
            break;
    }
    return std::nullopt;
}

}  // namespace verity::core
