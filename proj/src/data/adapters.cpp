#include "verity/data/adapters.hpp"

#include <sstream>

#include "verity/core/confusion.hpp"
#include "verity/error.hpp"

namespace verity::data {

namespace {

using nlohmann::json;

std::string join_scores(std::span<const int> scores) {
    std::ostringstream out;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i > 0) out << ',';
        out << scores[i];
    }
    return out.str();
}

}  // namespace

core::Label binarize_expert_scores(std::span<const int> consistency_scores,
                                   int scale_max) {
    if (consistency_scores.empty()) {
        throw MissingAnnotation("binarize: no expert consistency scores");
    }
    for (int score : consistency_scores) {
        if (score != scale_max) return core::Label::Fail;
    }
    return core::Label::Pass;
}

core::Label binarize_sentence_votes(
    const std::vector<std::vector<bool>>& votes_per_sentence) {
    if (votes_per_sentence.empty()) {
        throw MissingAnnotation("binarize: no sentence votes");
    }
    for (const auto& votes : votes_per_sentence) {
        if (votes.empty()) {
            throw MissingAnnotation("binarize: sentence with no votes");
        }
        for (bool vote : votes) {
            if (!vote) return core::Label::Fail;
        }
    }
    return core::Label::Pass;
}

core::Label binarize_summarization(const json& record, const std::string& rule) {
    if (rule == "summeval_expert") {
        if (!record.contains("expert_annotations")) {
            throw MissingAnnotation("binarize: record lacks expert_annotations");
        }
        std::vector<int> scores;
        for (const auto& annotation : record.at("expert_annotations")) {
            if (!annotation.contains("consistency")) {
                throw MissingAnnotation("binarize: annotation lacks consistency score");
            }
            scores.push_back(annotation.at("consistency").get<int>());
        }
        return binarize_expert_scores(scores);
    }
    if (rule == "qags_votes") {
        if (!record.contains("summary_sentences")) {
            throw MissingAnnotation("binarize: record lacks summary_sentences");
        }
        std::vector<std::vector<bool>> votes;
        for (const auto& sentence : record.at("summary_sentences")) {
            std::vector<bool> sentence_votes;
            for (const auto& response : sentence.value("responses", json::array())) {
                sentence_votes.push_back(response.at("response").get<std::string>() ==
                                         "yes");
            }
            votes.push_back(std::move(sentence_votes));
        }
        return binarize_sentence_votes(votes);
    }
    throw ConfigError("binarize_summarization: unknown rule '" + rule + "'");
}

core::Example adapt_summeval(const json& record, std::size_t line,
                             const std::string& source) {
    core::Example example;
    example.task = core::TaskKind::Summarization;
    example.source = source;
    example.id = record.contains("id")
                     ? record.at("id").get<std::string>()
                     : source + "-" + std::to_string(line);
    if (!record.contains("text") || !record.contains("decoded")) {
        throw SchemaError(line, record.contains("text") ? "decoded" : "text",
                          "missing");
    }
    example.context = core::trim(record.at("text").get<std::string>());
    example.response = core::trim(record.at("decoded").get<std::string>());
    example.label = binarize_summarization(record, "summeval_expert");

    std::vector<int> scores;
    for (const auto& annotation : record.at("expert_annotations")) {
        scores.push_back(annotation.at("consistency").get<int>());
    }
    example.meta["expert_consistency"] = join_scores(scores);

    if (auto bad = example.invalid_field()) {
        throw SchemaError(line, *bad, "empty after adaptation");
    }
    return example;
}

core::Example adapt_qags(const json& record, std::size_t line,
                         const std::string& source) {
    core::Example example;
    example.task = core::TaskKind::Summarization;
    example.source = source;
    example.id = record.contains("id")
                     ? record.at("id").get<std::string>()
                     : source + "-" + std::to_string(line);
    if (!record.contains("article")) throw SchemaError(line, "article", "missing");
    example.context = core::trim(record.at("article").get<std::string>());

    if (!record.contains("summary_sentences")) {
        throw SchemaError(line, "summary_sentences", "missing");
    }
    std::string summary;
    std::size_t total_votes = 0;
    std::size_t yes_votes = 0;
    for (const auto& sentence : record.at("summary_sentences")) {
        const std::string text = core::trim(sentence.at("sentence").get<std::string>());
        if (!summary.empty()) summary.push_back(' ');
        summary += text;
        for (const auto& response : sentence.value("responses", json::array())) {
            ++total_votes;
            if (response.at("response").get<std::string>() == "yes") ++yes_votes;
        }
    }
    example.response = summary;
    example.label = binarize_summarization(record, "qags_votes");
    example.meta["votes"] =
        std::to_string(yes_votes) + "/" + std::to_string(total_votes) + " yes";

    if (auto bad = example.invalid_field()) {
        throw SchemaError(line, *bad, "empty after adaptation");
    }
    return example;
}

TruthfulQaRow truthfulqa_row_from_json(const json& record, std::size_t line) {
    TruthfulQaRow row;
    row.id = record.contains("id") ? record.at("id").get<std::string>()
                                   : "tqa-" + std::to_string(line);
    if (!record.contains("question")) throw SchemaError(line, "question", "missing");
    row.question = core::trim(record.at("question").get<std::string>());
    if (!record.contains("context")) throw SchemaError(line, "context", "missing");
    row.context = core::trim(record.at("context").get<std::string>());
    if (row.context.empty()) {
        throw SchemaError(line, "context",
                          "unresolved context; rows without resolvable sources "
                          "must be excluded upstream");
    }
    row.ideal_answer =
        core::trim(record.value("ideal_answer", std::string{}));
    for (const auto& answer : record.value("good_answers", json::array())) {
        row.good_answers.push_back(core::trim(answer.get<std::string>()));
    }
    for (const auto& answer : record.value("bad_answers", json::array())) {
        row.bad_answers.push_back(core::trim(answer.get<std::string>()));
    }
    return row;
}

std::vector<core::Example> explode_truthfulqa(const TruthfulQaRow& row,
                                              const std::string& source,
                                              std::vector<std::string>* warnings) {
    const std::size_t total = (row.ideal_answer.empty() ? 0 : 1) +
                              row.good_answers.size() + row.bad_answers.size();
    if (total == 0) {
        throw EmptyAnswers("explode_truthfulqa: row '" + row.id + "' has no answers");
    }
    const bool any_pass = !row.ideal_answer.empty() || !row.good_answers.empty();
    if (!any_pass && warnings) {
        warnings->push_back("explode_truthfulqa: row '" + row.id +
                            "' has only bad answers; all examples labeled FAIL");
    }

    std::vector<core::Example> examples;
    examples.reserve(total);
    auto push = [&](const std::string& answer, core::Label label,
                    const std::string& suffix) {
        core::Example example;
        example.id = row.id + "-" + suffix;
        example.task = core::TaskKind::RagQA;
        example.question = row.question;
        example.context = row.context;
        example.response = answer;
        example.label = label;
        example.source = source;
        examples.push_back(std::move(example));
    };

    if (!row.ideal_answer.empty()) push(row.ideal_answer, core::Label::Pass, "ideal-0");
    for (std::size_t i = 0; i < row.good_answers.size(); ++i) {
        push(row.good_answers[i], core::Label::Pass, "good-" + std::to_string(i));
    }
    for (std::size_t i = 0; i < row.bad_answers.size(); ++i) {
        push(row.bad_answers[i], core::Label::Fail, "bad-" + std::to_string(i));
    }
    return examples;
}

}  // namespace verity::data
