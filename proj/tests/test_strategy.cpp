#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "verity/client/mock.hpp"
#include "verity/error.hpp"
#include "verity/strategy/claims.hpp"
#include "verity/strategy/strategy.hpp"

using namespace verity;
using namespace verity::strategy;
using core::ClaimClass;
using core::Label;

namespace {

core::Example summarization_example(std::string id, std::string response,
                                    std::string context,
                                    Label label = Label::Pass) {
    core::Example example;
    example.id = std::move(id);
    example.task = core::TaskKind::Summarization;
    example.response = std::move(response);
    example.context = std::move(context);
    example.label = label;
    example.source = "test";
    return example;
}

client::MockBackend substring_backend(
    std::vector<std::pair<std::string, std::string>> entries) {
    client::MockScript script;
    for (auto& [pattern, reply] : entries) {
        script.entries.push_back(
            {client::MockEntry::Match::Substring, std::move(pattern), std::move(reply)});
    }
    return client::MockBackend(std::move(script));
}

}  // namespace

TEST_CASE("parse_grade finds the first standalone grade token") {
    CHECK(parse_grade("A") == Grade{GradeLetter::A, 0});
    CHECK(parse_grade("grade: b-") == Grade{GradeLetter::B, -1});
    CHECK(parse_grade("The summary deserves a C because of two errors.") ==
          Grade{GradeLetter::C, 0});
    CHECK(parse_grade("B+.") == Grade{GradeLetter::B, +1});
    CHECK(parse_grade("(b+)") == Grade{GradeLetter::B, +1});
    CHECK(parse_grade("Overall: D") == Grade{GradeLetter::D, 0});
    CHECK(parse_grade("grade: a") == Grade{GradeLetter::A, 0});
    // Unicode minus counts as a minus modifier.
    CHECK(parse_grade("A\xe2\x88\x92") == Grade{GradeLetter::A, -1});
    // F never carries a modifier.
    CHECK(parse_grade("F-") == Grade{GradeLetter::F, 0});

    CHECK_THROWS_AS(parse_grade("no idea"), ParseError);
    CHECK_THROWS_AS(parse_grade(""), ParseError);
    CHECK_THROWS_AS(parse_grade("Dog ate it"), ParseError);
}

TEST_CASE("grade strings round-trip") {
    for (const char* text : {"A", "A-", "B+", "C", "D-", "F"}) {
        auto grade = Grade::from_string(text);
        REQUIRE(grade);
        CHECK(grade->to_string() == text);
    }
    CHECK_FALSE(Grade::from_string("F+"));
    CHECK_FALSE(Grade::from_string("E"));
    CHECK_FALSE(Grade::from_string("AB"));
    CHECK_THROWS_AS(Grade::make(GradeLetter::F, -1), ConfigError);
}

TEST_CASE("judge reply parsing") {
    CHECK(parse_judge_reply("PASS") == Label::Pass);
    CHECK(parse_judge_reply("Answer: fail") == Label::Fail);
    CHECK(parse_judge_reply("pass.") == Label::Pass);
    CHECK_THROWS_AS(parse_judge_reply("PASS... or FAIL"), AmbiguousReply);
    CHECK_THROWS_AS(parse_judge_reply("maybe"), ParseError);
    // Tokens inside words are ignored.
    CHECK_THROWS_AS(parse_judge_reply("it passed with failing colors"), ParseError);
}

TEST_CASE("claim class reply parsing") {
    CHECK(parse_claim_class_reply("ENTAILMENT") == ClaimClass::Entailment);
    CHECK(parse_claim_class_reply("CONTRADICTION") == ClaimClass::Contradiction);
    CHECK(parse_claim_class_reply("neutral.") == ClaimClass::Neutral);
    CHECK_THROWS_AS(parse_claim_class_reply("unsure"), ParseError);
    CHECK_THROWS_AS(parse_claim_class_reply("entailment or neutral"), ParseError);
}

TEST_CASE("grade_evaluate maps pass grades to PASS") {
    const auto config = StrategyConfig::defaults(StrategyKind::Grading);
    const PromptLibrary prompts;
    const auto example = summarization_example("g1", "the summary", "the reference");

    auto good = substring_backend({{"Response: the summary", "B+"}});
    CHECK(grade_evaluate(example, config, prompts, good).prediction == Label::Pass);

    auto bad = substring_backend({{"Response: the summary", "F"}});
    CHECK(grade_evaluate(example, config, prompts, bad).prediction == Label::Fail);

    auto chatty = substring_backend(
        {{"Response: the summary", "The summary deserves a C because it is wrong."}});
    CHECK(grade_evaluate(example, config, prompts, chatty).prediction == Label::Fail);
}

TEST_CASE("grade_evaluate depends on the reply only through the parsed grade") {
    const auto config = StrategyConfig::defaults(StrategyKind::Grading);
    const PromptLibrary prompts;
    const auto example = summarization_example("g2", "resp text", "ref text");
    for (const char* reply : {"B+", "grade: b+", "I assign B+ here."}) {
        auto backend = substring_backend({{"Response: resp text", reply}});
        CHECK(grade_evaluate(example, config, prompts, backend).prediction ==
              Label::Pass);
    }
}

TEST_CASE("judge_evaluate parses the verdict token") {
    const auto config = StrategyConfig::defaults(StrategyKind::Judge);
    const PromptLibrary prompts;
    const auto example = summarization_example("j1", "the answer", "the context");

    auto pass = substring_backend({{"Answer: the answer", "PASS"}});
    CHECK(judge_evaluate(example, config, prompts, pass).prediction == Label::Pass);

    auto fail = substring_backend({{"Answer: the answer", "Answer: fail"}});
    CHECK(judge_evaluate(example, config, prompts, fail).prediction == Label::Fail);

    auto both = substring_backend({{"Answer: the answer", "PASS... or FAIL"}});
    CHECK_THROWS_AS(judge_evaluate(example, config, prompts, both), AmbiguousReply);
}

TEST_CASE("extract_claims parses pipe-delimited lines") {
    const auto config = StrategyConfig::defaults(StrategyKind::ClaimExtraction);
    const PromptLibrary prompts;

    auto single = substring_backend(
        {{"Text: the carnival text", "carnival | launched in | 1967"}});
    auto triples = extract_claims("the carnival text", config, prompts, single);
    REQUIRE(triples.size() == 1);
    CHECK(triples[0].subject == "carnival");
    CHECK(triples[0].predicate == "launched in");
    CHECK(triples[0].object == "1967");

    auto messy = substring_backend(
        {{"Text: messy", "a | b | c\nbroken line\nd | e | f\ng | h | i"}});
    std::vector<std::string> warnings;
    auto kept = extract_claims("messy", config, prompts, messy, nullptr, &warnings);
    CHECK(kept.size() == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("malformed") != std::string::npos);

    auto strict_config = config;
    strict_config.strict_parsing = true;
    auto messy2 = substring_backend(
        {{"Text: messy", "a | b | c\nbroken line\nd | e | f\ng | h | i"}});
    CHECK_THROWS_AS(extract_claims("messy", strict_config, prompts, messy2),
                    ParseError);

    auto empty = substring_backend({{"Text: empty case", ""}});
    CHECK(extract_claims("empty case", config, prompts, empty).empty());

    // Unary claims (empty object) survive with a warning.
    auto unary = substring_backend({{"Text: unary", "carnival | is oldest | "}});
    warnings.clear();
    auto unary_triples =
        extract_claims("unary", config, prompts, unary, nullptr, &warnings);
    REQUIRE(unary_triples.size() == 1);
    CHECK(unary_triples[0].object.empty());
    CHECK(warnings.size() == 1);
}

TEST_CASE("check_claim presents reference triples and parses the class") {
    const auto config = StrategyConfig::defaults(StrategyKind::ClaimExtraction);
    const PromptLibrary prompts;
    const core::Triple claim{"carnival", "launched in", "1967", std::nullopt};
    const std::vector<core::Triple> references{
        {"carnival", "launched in", "1967", std::nullopt}};

    auto entailed = substring_backend({{"Claim: carnival | launched in | 1967",
                                        "ENTAILMENT"}});
    CHECK(check_claim(claim, references, "ref text", config, prompts, entailed) ==
          ClaimClass::Entailment);

    auto contradicted = substring_backend(
        {{"Claim: carnival | launched in | 1967", "CONTRADICTION"}});
    CHECK(check_claim(claim, references, "ref text", config, prompts, contradicted) ==
          ClaimClass::Contradiction);

    auto neutral = substring_backend(
        {{"Claim: carnival | launched in | 1967", "neutral."}});
    CHECK(check_claim(claim, references, "ref text", config, prompts, neutral) ==
          ClaimClass::Neutral);
}

TEST_CASE("evaluate_summary computes proportions and accuracy") {
    const auto config = StrategyConfig::defaults(StrategyKind::ClaimExtraction);
    const PromptLibrary prompts;

    SUBCASE("fully supported summary") {
        auto backend = substring_backend({
            {"Text: the summary", "s1 | says | a\ns2 | says | b\ns3 | says | c\ns4 | says | d"},
            {"Text: the reference", "r1 | states | x"},
            {"Claim: s1", "ENTAILMENT"},
            {"Claim: s2", "ENTAILMENT"},
            {"Claim: s3", "ENTAILMENT"},
            {"Claim: s4", "ENTAILMENT"},
        });
        const auto evaluation = evaluate_summary("the summary", "the reference",
                                                 std::nullopt, config, prompts, backend);
        CHECK(evaluation.stats.entailment == 1.0);
        CHECK(evaluation.stats.contradiction == 0.0);
        CHECK(evaluation.accuracy == 1.0);
    }

    SUBCASE("two entailed, one contradicted, one neutral") {
        auto backend = substring_backend({
            {"Text: the summary", "s1 | says | a\ns2 | says | b\ns3 | says | c\ns4 | says | d"},
            {"Text: the reference", "r1 | states | x"},
            {"Claim: s1", "ENTAILMENT"},
            {"Claim: s2", "ENTAILMENT"},
            {"Claim: s3", "CONTRADICTION"},
            {"Claim: s4", "NEUTRAL"},
        });
        core::TokenUsage usage;
        const auto evaluation =
            evaluate_summary("the summary", "the reference", std::nullopt, config,
                             prompts, backend, &usage);
        CHECK(evaluation.stats.entailment == 0.5);
        CHECK(evaluation.stats.contradiction == 0.25);
        // Independently computed: 2/((0.5+1e-4)^-1 + (0.75+1e-4)^-1).
        CHECK(evaluation.accuracy ==
              doctest::Approx(0.6001039993601024).epsilon(1e-12));
        // 6 backend calls happened; usage must cover all of them.
        CHECK(usage.prompt_tokens > 0);
        CHECK(usage.completion_tokens > 0);

        // Missing: the reference triple has no entailed counterpart.
        std::size_t missing = 0;
        for (const auto& [triple, claim_class] : evaluation.classifications) {
            if (claim_class == ClaimClass::Missing) {
                ++missing;
                CHECK(triple.subject == "r1");
            }
        }
        CHECK(missing == 1);
    }

    SUBCASE("empty response-side extraction scores zero") {
        auto backend = substring_backend({
            {"Text: the summary", ""},
            {"Text: the reference", "r1 | states | x"},
        });
        std::vector<std::string> warnings;
        const auto evaluation =
            evaluate_summary("the summary", "the reference", std::nullopt, config,
                             prompts, backend, nullptr, &warnings);
        CHECK(evaluation.accuracy == 0.0);
        CHECK(!warnings.empty());
    }

    SUBCASE("entailed counterparts cover reference triples") {
        auto backend = substring_backend({
            {"Text: the summary", "s1 | says | a"},
            {"Text: the reference", "S1 | Says | A"},
            {"Claim: s1", "ENTAILMENT"},
        });
        const auto evaluation = evaluate_summary("the summary", "the reference",
                                                 std::nullopt, config, prompts, backend);
        // Case-insensitive match: no Missing entry.
        for (const auto& [triple, claim_class] : evaluation.classifications) {
            CHECK(claim_class != ClaimClass::Missing);
        }
    }
}

TEST_CASE("claim_evaluate routes by size") {
    auto config = StrategyConfig::defaults(StrategyKind::ClaimExtraction);
    config.size_threshold_tokens = 5;
    const PromptLibrary prompts;

    SUBCASE("short answer becomes a synthetic claim") {
        // RAG-QA shaped example: short answer, large context.
        core::Example example;
        example.id = "r1";
        example.task = core::TaskKind::RagQA;
        example.question = "Rennae Stubbs and Renata Tomanova were both what?";
        example.context =
            "Rennae Stubbs is a retired tennis player from Australia and "
            "Renata Tomanova is a former professional tennis player too.";
        example.response = "tennis player";
        example.label = Label::Pass;
        example.source = "test";

        auto backend = substring_backend({
            {"Text: Rennae Stubbs is a retired",
             "Rennae Stubbs | is | tennis player\nRenata Tomanova | is | tennis player"},
            {"Claim: tennis player | asserts |", "ENTAILMENT"},
        });
        const auto verdict = claim_evaluate(example, config, prompts, backend);
        CHECK(verdict.prediction == Label::Pass);
        CHECK(verdict.score == 1.0);
        REQUIRE(verdict.claims.has_value());
        CHECK(verdict.claims->front().first.subject == "tennis player");
        CHECK(verdict.claims->front().first.predicate == "asserts");
    }

    SUBCASE("both sides short: claim checked against claim") {
        core::Example example = summarization_example("s1", "short claim", "short ref");
        auto backend = substring_backend({
            {"Claim: short claim | asserts |", "CONTRADICTION"},
        });
        const auto verdict = claim_evaluate(example, config, prompts, backend);
        CHECK(verdict.prediction == Label::Fail);
        CHECK(*verdict.score == doctest::Approx(1e-4).epsilon(1e-9));
        // The synthetic reference claim shows up as Missing (not entailed).
        bool saw_missing = false;
        for (const auto& [triple, claim_class] : *verdict.claims) {
            if (claim_class == ClaimClass::Missing) {
                saw_missing = true;
                CHECK(triple.subject == "short ref");
            }
        }
        CHECK(saw_missing);
    }

    SUBCASE("both sides large: both extracted") {
        core::Example example = summarization_example(
            "s2", "one two three four five six seven", "uno dos tres cuatro cinco seis siete");
        auto backend = substring_backend({
            {"Text: one two three", "s1 | says | a"},
            {"Text: uno dos tres", "r1 | states | x"},
            {"Claim: s1", "ENTAILMENT"},
        });
        const auto verdict = claim_evaluate(example, config, prompts, backend);
        CHECK(verdict.prediction == Label::Pass);
        CHECK(backend.calls_made() == 3);
    }
}

TEST_CASE("prediction is monotone in the score threshold") {
    auto config = StrategyConfig::defaults(StrategyKind::ClaimExtraction);
    config.size_threshold_tokens = 5;
    const PromptLibrary prompts;
    const auto example = summarization_example("m1", "short claim", "short ref");

    core::Label previous = Label::Pass;
    for (double threshold : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        config.score_threshold = threshold;
        auto backend = substring_backend({
            {"Claim: short claim | asserts |", "NEUTRAL"},
        });
        // NEUTRAL: E=0, C=0 -> accuracy ~ 2e-4, Fail at every threshold here.
        const auto verdict = claim_evaluate(example, config, prompts, backend);
        if (previous == Label::Fail) CHECK(verdict.prediction == Label::Fail);
        previous = verdict.prediction;
    }
}

TEST_CASE("run_strategy dispatches and tags errors with the example id") {
    const PromptLibrary prompts;
    const auto example = summarization_example("dispatch-1", "resp words", "ref words");

    auto grading = StrategyConfig::defaults(StrategyKind::Grading);
    auto backend = substring_backend({{"Response: resp words", "Grade: A"}});
    const auto verdict = run_strategy(example, grading, prompts, backend);
    CHECK(verdict.prediction == Label::Pass);
    CHECK(verdict.strategy == "grading");
    CHECK(verdict.model == "mock");

    auto unparsable = substring_backend({{"Response: resp words", "no grade here"}});
    try {
        run_strategy(example, grading, prompts, unparsable);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("dispatch-1") != std::string::npos);
    }

    core::Example invalid = example;
    invalid.context.clear();  // summarization requires a reference
    CHECK_THROWS_AS(run_strategy(invalid, grading, prompts, backend), ConfigError);
}

TEST_CASE("strategies are deterministic for a fixed script") {
    const PromptLibrary prompts;
    auto config = StrategyConfig::defaults(StrategyKind::ClaimExtraction);
    config.size_threshold_tokens = 5;
    const auto example = summarization_example("d1", "short claim", "short ref");

    auto run_once = [&] {
        auto backend = substring_backend({
            {"Claim: short claim | asserts |", "ENTAILMENT"},
        });
        return claim_evaluate(example, config, prompts, backend);
    };
    const auto a = run_once();
    const auto b = run_once();
    CHECK(a.prediction == b.prediction);
    CHECK(a.score == b.score);
    CHECK(a.usage == b.usage);
    REQUIRE(a.claims.has_value());
    REQUIRE(b.claims.has_value());
    CHECK(a.claims->size() == b.claims->size());
}

TEST_CASE("strategy config validation") {
    auto grading = StrategyConfig::defaults(StrategyKind::Grading);
    grading.pass_grades.clear();
    CHECK_THROWS_AS(grading.validate(), ConfigError);

    auto claims = StrategyConfig::defaults(StrategyKind::ClaimExtraction);
    claims.score_threshold = 1.0;
    CHECK_THROWS_AS(claims.validate(), ConfigError);
    claims.score_threshold = 0.5;
    CHECK_NOTHROW(claims.validate());
}

TEST_CASE("prompt library renders placeholders and hashes templates") {
    PromptLibrary prompts;
    CHECK(PromptLibrary::render("Q: {question} R: {response}",
                                {{"question", "why?"}, {"response", "because"}}) ==
          "Q: why? R: because");
    // Unknown placeholders are left intact.
    CHECK(PromptLibrary::render("{unknown}", {{"question", "x"}}) == "{unknown}");

    CHECK(prompts.hash("grading_user").size() == 16);
    CHECK(prompts.contains("judge_user"));
    CHECK_THROWS_AS(prompts.get("nope"), ConfigError);

    // The shipped template files match the built-in defaults.
    PromptLibrary from_files;
    from_files.load_dir(std::filesystem::path(VERITY_SOURCE_DIR) / "prompts");
    for (const auto& id : prompts.ids()) {
        CHECK(from_files.get(id) == prompts.get(id));
    }
}
