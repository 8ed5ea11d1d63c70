/// @file types.hpp
/// @brief Domain types shared by every verity module.
///
/// All types here are immutable values: safe to copy, share, and send
/// between concurrent workers.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace verity::core {

/// The kind of task an example was drawn from, categorized by the context
/// provided: no context, retrieved context, or a reference document.
enum class TaskKind {
    ZeroContextQA,
    RagQA,
    Summarization,
};

/// Gold or predicted outcome. Fail (hallucination present) is the positive
/// class for every diagnostic statistic in this library.
enum class Label {
    Pass,
    Fail,
};

std::string_view to_string(TaskKind task);
std::string_view to_string(Label label);
std::optional<TaskKind> task_from_string(std::string_view text);
std::optional<Label> label_from_string(std::string_view text);

/// One evaluation unit: a task, its inputs, the model response under test,
/// and the gold PASS/FAIL label.
struct Example {
    std::string id;
    TaskKind task = TaskKind::Summarization;
    std::string question;
    std::string context;   // reference documents; empty where the task allows
    std::string response;
    Label label = Label::Pass;
    std::string source;    // dataset name
    std::map<std::string, std::string> meta;

    /// Returns the name of the first field violating the task's emptiness
    /// rules (after trimming), or nullopt when the example is valid.
    std::optional<std::string> invalid_field() const;
};

/// Character range into a source text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
};

/// An extracted claim. Object may be empty for unary claims; extractors
/// that emit those get a validation warning rather than a hard error.
struct Triple {
    std::string subject;
    std::string predicate;
    std::string object;
    std::optional<Span> span;

    bool operator==(const Triple& other) const {
        return subject == other.subject && predicate == other.predicate &&
               object == other.object;
    }
};

/// NLI class assigned to a claim. Entailment/Contradiction/Neutral apply to
/// response-side claims; Missing marks reference-side claims absent from the
/// response.
enum class ClaimClass {
    Entailment,
    Contradiction,
    Neutral,
    Missing,
};

std::string_view to_string(ClaimClass c);
std::optional<ClaimClass> claim_class_from_string(std::string_view text);

/// Token counts for one or more backend calls. Additive under merge.
struct TokenUsage {
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;

    TokenUsage& operator+=(const TokenUsage& other) {
        prompt_tokens += other.prompt_tokens;
        completion_tokens += other.completion_tokens;
        return *this;
    }

    friend TokenUsage operator+(TokenUsage a, const TokenUsage& b) {
        a += b;
        return a;
    }

    bool operator==(const TokenUsage&) const = default;
};

/// Binary confusion counts with Fail as the positive class:
///   tp = predicted Fail & labeled Fail    fp = predicted Fail & labeled Pass
///   fn = predicted Pass & labeled Fail    tn = predicted Pass & labeled Pass
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }

    bool operator==(const ConfusionMatrix&) const = default;
};

/// A strategy's prediction for one example, with the evidence behind it.
struct Verdict {
    Label prediction = Label::Pass;
    std::optional<double> score;  // in [0,1]; present for score-based strategies
    std::optional<std::vector<std::pair<Triple, ClaimClass>>> claims;
    TokenUsage usage;             // sum over all backend calls for this example
    std::string strategy;
    std::string model;
};

}  // namespace verity::core
