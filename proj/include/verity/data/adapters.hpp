/// @file adapters.hpp
/// @brief Per-source adapters with binarization rules.
///
/// The upstream third-party datasets are not vendored; adapters consume the
/// upstream distribution formats and emit normalized examples.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "verity/core/types.hpp"

namespace verity::data {

/// Expert consistency scores on a 1..scale_max scale: Pass iff all
/// annotators agree on the scale maximum. Throws MissingAnnotation when
/// empty.
core::Label binarize_expert_scores(std::span<const int> consistency_scores,
                                   int scale_max = 5);

/// Per-sentence yes/no votes: Pass iff every vote on every sentence is
/// "yes" (complete agreement, strictest reading). Throws MissingAnnotation
/// when there are no votes.
core::Label binarize_sentence_votes(
    const std::vector<std::vector<bool>>& votes_per_sentence);

/// Record-level binarization, dispatching on the rule id
/// ("summeval_expert" or "qags_votes"). Throws MissingAnnotation /
/// ConfigError.
core::Label binarize_summarization(const nlohmann::json& record,
                                   const std::string& rule);

/// SummEval upstream record: {"id"?, "text", "decoded",
/// "expert_annotations": [{"consistency": int, ...}, ...]}.
core::Example adapt_summeval(const nlohmann::json& record, std::size_t line,
                             const std::string& source);

/// QAGS upstream record: {"article", "summary_sentences":
/// [{"sentence", "responses": [{"response": "yes"|"no"}, ...]}, ...]}.
core::Example adapt_qags(const nlohmann::json& record, std::size_t line,
                         const std::string& source);

/// One TruthfulQA row with its context already resolved upstream.
struct TruthfulQaRow {
    std::string id;
    std::string question;
    std::string context;
    std::string ideal_answer;                // may be empty
    std::vector<std::string> good_answers;
    std::vector<std::string> bad_answers;
};

TruthfulQaRow truthfulqa_row_from_json(const nlohmann::json& record,
                                       std::size_t line);

/// Explodes a row along its answers: one example per answer, ideal and good
/// answers labeled Pass, bad answers labeled Fail; question and context are
/// copied into each. Throws EmptyAnswers when the row has no answers; warns
/// when only bad answers exist.
std::vector<core::Example> explode_truthfulqa(
    const TruthfulQaRow& row, const std::string& source = "truthfulqa",
    std::vector<std::string>* warnings = nullptr);

}  // namespace verity::data
