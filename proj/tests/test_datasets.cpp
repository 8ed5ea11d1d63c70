#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "verity/core/confusion.hpp"
#include "verity/data/adapters.hpp"
#include "verity/data/fixture.hpp"
#include "verity/data/prevalence.hpp"
#include "verity/data/schema.hpp"
#include "verity/error.hpp"
#include "verity/strategy/strategy.hpp"

using namespace verity;
using namespace verity::data;
using core::Label;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() /
               ("verity_data_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

const char* kTwoLines =
    R"({"id":"a1","task":"summarization","question":"","context":"ref text","response":"resp text","label":"PASS","source":"s1","meta":{}}
{"id":"a2","task":"rag_qa","question":"who?","context":"ctx","response":"ans","label":"FAIL","source":"s1","meta":{"k":"v"}}
)";

}  // namespace

TEST_CASE("load_normalized accepts well-formed files") {
    const auto dir = temp_dir("load");
    write_file(dir / "ok.jsonl", kTwoLines);
    const auto examples = load_normalized(dir / "ok.jsonl");
    REQUIRE(examples.size() == 2);
    CHECK(examples[0].id == "a1");
    CHECK(examples[0].task == core::TaskKind::Summarization);
    CHECK(examples[1].label == Label::Fail);
    CHECK(examples[1].meta.at("k") == "v");
    std::filesystem::remove_all(dir);
}

TEST_CASE("load_normalized rejects schema violations") {
    const auto dir = temp_dir("schema");

    write_file(dir / "missing.jsonl",
               R"({"id":"x","task":"summarization","question":"","context":"c","response":"r","source":"s"})"
               "\n");
    try {
        load_normalized(dir / "missing.jsonl");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.line() == 1);
        CHECK(e.field() == "label");
    }

    write_file(dir / "dup.jsonl", std::string(kTwoLines) +
               R"({"id":"a1","task":"summarization","question":"","context":"c","response":"r","label":"PASS","source":"s1"})"
               "\n");
    CHECK_THROWS_AS(load_normalized(dir / "dup.jsonl"), DuplicateId);

    // Summarization with empty context violates the task rules.
    write_file(dir / "empty_ctx.jsonl",
               R"({"id":"x","task":"summarization","question":"","context":"  ","response":"r","label":"PASS","source":"s"})"
               "\n");
    try {
        load_normalized(dir / "empty_ctx.jsonl");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "context");
    }

    write_file(dir / "bad_label.jsonl",
               R"({"id":"x","task":"summarization","question":"","context":"c","response":"r","label":"pass","source":"s"})"
               "\n");
    CHECK_THROWS_AS(load_normalized(dir / "bad_label.jsonl"), SchemaError);

    write_file(dir / "not_json.jsonl", "not json at all\n");
    CHECK_THROWS_AS(load_normalized(dir / "not_json.jsonl"), SchemaError);

    std::filesystem::remove_all(dir);
}

TEST_CASE("normalized files are byte-stable under load/save") {
    const auto dir = temp_dir("stable");
    write_file(dir / "in.jsonl", kTwoLines);
    const auto examples = load_normalized(dir / "in.jsonl");
    save_normalized(dir / "out.jsonl", examples);
    CHECK(read_file(dir / "out.jsonl") == kTwoLines);

    // Idempotence: a second round trip changes nothing.
    const auto again = load_normalized(dir / "out.jsonl");
    save_normalized(dir / "out2.jsonl", again);
    CHECK(read_file(dir / "out2.jsonl") == read_file(dir / "out.jsonl"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("canonical field order in serialized lines") {
    core::Example example;
    example.id = "e";
    example.task = core::TaskKind::Summarization;
    example.context = "c";
    example.response = "r";
    example.source = "s";
    const auto line = to_jsonl_line(example);
    CHECK(line.find("\"id\"") < line.find("\"task\""));
    CHECK(line.find("\"task\"") < line.find("\"question\""));
    CHECK(line.find("\"question\"") < line.find("\"context\""));
    CHECK(line.find("\"context\"") < line.find("\"response\""));
    CHECK(line.find("\"response\"") < line.find("\"label\""));
    CHECK(line.find("\"label\"") < line.find("\"source\""));
    CHECK(line.find("\"source\"") < line.find("\"meta\""));
}

TEST_CASE("expert-score binarization needs unanimous scale maximum") {
    CHECK(binarize_expert_scores(std::vector<int>{5, 5, 5}) == Label::Pass);
    CHECK(binarize_expert_scores(std::vector<int>{5, 5, 4}) == Label::Fail);
    CHECK(binarize_expert_scores(std::vector<int>{4, 4, 4}) == Label::Fail);
    CHECK_THROWS_AS(binarize_expert_scores(std::vector<int>{}), MissingAnnotation);
}

TEST_CASE("sentence-vote binarization needs every vote to be yes") {
    CHECK(binarize_sentence_votes({{true, true}, {true, true, true}}) == Label::Pass);
    CHECK(binarize_sentence_votes({{true, true}, {true, false}}) == Label::Fail);
    CHECK(binarize_sentence_votes({{false, false}}) == Label::Fail);
    CHECK_THROWS_AS(binarize_sentence_votes({}), MissingAnnotation);
    CHECK_THROWS_AS(binarize_sentence_votes({{}}), MissingAnnotation);
}

TEST_CASE("binarization is invariant to annotator order") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> score(3, 5);
    for (int round = 0; round < 50; ++round) {
        std::vector<int> scores{score(rng), score(rng), score(rng)};
        auto shuffled = scores;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(binarize_expert_scores(scores) == binarize_expert_scores(shuffled));
    }
}

TEST_CASE("record-level binarization dispatches on the rule id") {
    const auto summeval = nlohmann::json::parse(R"({
        "expert_annotations": [{"consistency": 5}, {"consistency": 5}]
    })");
    CHECK(binarize_summarization(summeval, "summeval_expert") == Label::Pass);

    const auto qags = nlohmann::json::parse(R"({
        "summary_sentences": [
            {"sentence": "s1", "responses": [{"response": "yes"}, {"response": "yes"}]},
            {"sentence": "s2", "responses": [{"response": "yes"}]}
        ]
    })");
    CHECK(binarize_summarization(qags, "qags_votes") == Label::Pass);

    CHECK_THROWS_AS(binarize_summarization(summeval, "unknown_rule"), ConfigError);
    CHECK_THROWS_AS(binarize_summarization(nlohmann::json::object(), "summeval_expert"),
                    MissingAnnotation);
}

TEST_CASE("summeval adapter") {
    const auto record = nlohmann::json::parse(R"({
        "id": "se-1",
        "text": "the article text",
        "decoded": "the summary",
        "expert_annotations": [{"consistency": 5}, {"consistency": 4}]
    })");
    const auto example = adapt_summeval(record, 1, "summeval");
    CHECK(example.id == "se-1");
    CHECK(example.task == core::TaskKind::Summarization);
    CHECK(example.context == "the article text");
    CHECK(example.response == "the summary");
    CHECK(example.label == Label::Fail);
    CHECK(example.meta.at("expert_consistency") == "5,4");
}

TEST_CASE("qags adapter") {
    const auto record = nlohmann::json::parse(R"({
        "article": "the article",
        "summary_sentences": [
            {"sentence": "first sentence.", "responses": [{"response": "yes"}]},
            {"sentence": "second sentence.", "responses": [{"response": "yes"}]}
        ]
    })");
    const auto example = adapt_qags(record, 3, "qags_cnndm");
    CHECK(example.id == "qags_cnndm-3");
    CHECK(example.response == "first sentence. second sentence.");
    CHECK(example.label == Label::Pass);
    CHECK(example.meta.at("votes") == "2/2 yes");
}

TEST_CASE("truthfulqa explosion") {
    TruthfulQaRow row;
    row.id = "q1";
    row.question = "the question";
    row.context = "the resolved context";
    row.ideal_answer = "ideal";
    row.good_answers = {"good one", "good two"};
    row.bad_answers = {"bad one", "bad two", "bad three"};

    const auto examples = explode_truthfulqa(row);
    REQUIRE(examples.size() == 6);
    std::size_t pass = 0;
    std::size_t fail = 0;
    for (const auto& example : examples) {
        CHECK(example.question == row.question);
        CHECK(example.context == row.context);
        CHECK(example.task == core::TaskKind::RagQA);
        (example.label == Label::Pass ? pass : fail)++;
    }
    CHECK(pass == 3);
    CHECK(fail == 3);
    CHECK(examples[0].id == "q1-ideal-0");
    CHECK(examples[5].id == "q1-bad-2");
}

TEST_CASE("truthfulqa degenerate rows") {
    TruthfulQaRow only_bad;
    only_bad.id = "q2";
    only_bad.question = "q";
    only_bad.context = "c";
    only_bad.bad_answers = {"wrong"};
    std::vector<std::string> warnings;
    const auto examples = explode_truthfulqa(only_bad, "truthfulqa", &warnings);
    CHECK(examples.size() == 1);
    CHECK(examples[0].label == Label::Fail);
    CHECK(!warnings.empty());

    TruthfulQaRow empty;
    empty.id = "q3";
    empty.question = "q";
    empty.context = "c";
    CHECK_THROWS_AS(explode_truthfulqa(empty), EmptyAnswers);
}

TEST_CASE("explosion length equals the answer count") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> count(0, 5);
    for (int round = 0; round < 50; ++round) {
        TruthfulQaRow row;
        row.id = "r" + std::to_string(round);
        row.question = "q";
        row.context = "c";
        const bool has_ideal = count(rng) > 2;
        if (has_ideal) row.ideal_answer = "ideal";
        for (int i = 0; i < count(rng); ++i) row.good_answers.push_back("g");
        for (int i = 0; i < count(rng); ++i) row.bad_answers.push_back("b");
        const std::size_t expected =
            (has_ideal ? 1 : 0) + row.good_answers.size() + row.bad_answers.size();
        if (expected == 0) {
            CHECK_THROWS_AS(explode_truthfulqa(row), EmptyAnswers);
        } else {
            CHECK(explode_truthfulqa(row).size() == expected);
        }
    }
}

TEST_CASE("truthfulqa rows require resolved context") {
    const auto record = nlohmann::json::parse(R"({
        "question": "q", "context": "", "ideal_answer": "a"
    })");
    CHECK_THROWS_AS(truthfulqa_row_from_json(record, 4), SchemaError);
}

TEST_CASE("the 5-row fixture explodes to the expected counts") {
    DatasetManifest dataset;
    dataset.name = "truthfulqa";
    dataset.task = core::TaskKind::RagQA;
    dataset.path = std::filesystem::path(VERITY_TEST_FIXTURES) / "truthfulqa_rows.jsonl";
    dataset.adapter = "truthfulqa";
    dataset.expected_count = 19;

    const auto examples = load_dataset(dataset);
    CHECK(examples.size() == 19);
    const auto stats = prevalence(examples);
    CHECK(stats.overall.pass == 10);
    CHECK(stats.overall.fail == 9);
}

TEST_CASE("prevalence counts per source") {
    CHECK(prevalence({}).overall.total() == 0);

    std::vector<core::Example> examples;
    for (int i = 0; i < 4; ++i) {
        core::Example example;
        example.id = "p" + std::to_string(i);
        example.task = core::TaskKind::Summarization;
        example.context = "c";
        example.response = "r";
        example.label = i == 3 ? Label::Fail : Label::Pass;
        example.source = "src";
        examples.push_back(example);
    }
    const auto stats = prevalence(examples);
    CHECK(stats.per_source.at("src").prevalence() == 0.25);
    CHECK(stats.overall.total() == 4);
}

TEST_CASE("manifest validation") {
    DatasetManifest bad;
    bad.name = "x";
    bad.adapter = "mystery";
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    DatasetManifest counted;
    counted.name = "truthfulqa";
    counted.adapter = "truthfulqa";
    counted.path = std::filesystem::path(VERITY_TEST_FIXTURES) / "truthfulqa_rows.jsonl";
    counted.expected_count = 123;  // wrong on purpose
    CHECK_THROWS_AS(load_dataset(counted), ConfigError);
}

TEST_CASE("generate_fixture plants an exact confusion matrix") {
    const core::ConfusionMatrix planted{10, 2, 3, 15};
    const auto bundle = generate_fixture(planted, 42);
    CHECK(bundle.examples.size() == 30);
    CHECK(bundle.script.strict);

    const FixtureOptions options;
    const strategy::StrategyConfig* configs[] = {&options.grading, &options.judge,
                                                 &options.claims};
    for (const auto* config : configs) {
        client::MockBackend backend(bundle.script);
        std::vector<std::pair<Label, Label>> pairs;
        for (const auto& example : bundle.examples) {
            const auto verdict = strategy::run_strategy(example, *config,
                                                        options.prompts, backend);
            pairs.emplace_back(verdict.prediction, example.label);
        }
        CHECK(core::confusion_from_pairs(pairs) == planted);
    }
}

TEST_CASE("fixtures are deterministic given the seed") {
    const core::ConfusionMatrix planted{2, 1, 1, 2};
    const auto a = generate_fixture(planted, 7);
    const auto b = generate_fixture(planted, 7);
    REQUIRE(a.examples.size() == b.examples.size());
    for (std::size_t i = 0; i < a.examples.size(); ++i) {
        CHECK(a.examples[i].id == b.examples[i].id);
        CHECK(a.examples[i].response == b.examples[i].response);
    }
    REQUIRE(a.script.entries.size() == b.script.entries.size());
    for (std::size_t i = 0; i < a.script.entries.size(); ++i) {
        CHECK(a.script.entries[i].pattern == b.script.entries[i].pattern);
        CHECK(a.script.entries[i].reply == b.script.entries[i].reply);
    }

    const auto c = generate_fixture(planted, 8);
    bool any_difference = false;
    for (std::size_t i = 0; i < a.examples.size(); ++i) {
        if (a.examples[i].response != c.examples[i].response) any_difference = true;
    }
    CHECK(any_difference);
}

TEST_CASE("all-pass fixture predicts and labels everything PASS") {
    const core::ConfusionMatrix planted{0, 0, 0, 5};
    const auto bundle = generate_fixture(planted, 1);
    CHECK(bundle.examples.size() == 5);
    const FixtureOptions options;
    client::MockBackend backend(bundle.script);
    for (const auto& example : bundle.examples) {
        CHECK(example.label == Label::Pass);
        const auto verdict =
            strategy::run_strategy(example, options.judge, options.prompts, backend);
        CHECK(verdict.prediction == Label::Pass);
    }
}
