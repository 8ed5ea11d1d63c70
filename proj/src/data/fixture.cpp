#include "verity/data/fixture.hpp"

#include <array>
#include <random>

#include "verity/client/backend.hpp"
#include "verity/strategy/strategy.hpp"

namespace verity::data {

namespace {

constexpr std::array<const char*, 24> kFillerWords{
    "the",     "report",  "states",  "that",    "records", "show",
    "a",       "steady",  "series",  "of",      "observed", "results",
    "across",  "several", "periods", "with",    "notes",    "on",
    "each",    "entry",   "and",     "general", "context",  "details",
};

std::string filler_sentence(std::mt19937_64& rng, std::size_t words) {
    std::uniform_int_distribution<std::size_t> pick(0, kFillerWords.size() - 1);
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
        if (i > 0) out.push_back(' ');
        out += kFillerWords[pick(rng)];
    }
    return out;
}

void add_exact(client::MockScript& script, const client::ChatRequest& request,
               std::string reply) {
    script.entries.push_back(client::MockEntry{client::MockEntry::Match::Exact,
                                               client::prompt_text(request),
                                               std::move(reply)});
}

}  // namespace

FixtureBundle generate_fixture(const core::ConfusionMatrix& planted,
                               std::uint64_t seed,
                               const FixtureOptions& options) {
    std::mt19937_64 rng(seed);
    FixtureBundle bundle;
    bundle.script.strict = true;

    struct Cell {
        const char* name;
        std::uint64_t count;
        core::Label label;
        bool predicted_fail;
    };
    const std::array<Cell, 4> cells{{
        {"tp", planted.tp, core::Label::Fail, true},
        {"fp", planted.fp, core::Label::Pass, true},
        {"fn", planted.fn, core::Label::Fail, false},
        {"tn", planted.tn, core::Label::Pass, false},
    }};

    // Large enough that the response side always takes the extraction route.
    const std::size_t response_words = options.claims.size_threshold_tokens + 4;

    for (const auto& cell : cells) {
        for (std::uint64_t k = 0; k < cell.count; ++k) {
            const std::string id =
                "fx-" + std::string(cell.name) + "-" + std::to_string(k);

            core::Example example;
            example.id = id;
            example.task = core::TaskKind::Summarization;
            example.context = "Reference notes for " + id + ": planted record.";
            example.response =
                id + " reports " + filler_sentence(rng, response_words);
            example.label = cell.label;
            example.source = options.source;
            bundle.examples.push_back(example);

            // Grading and judge replies.
            add_exact(bundle.script,
                      strategy::make_grading_request(example, options.grading,
                                                     options.prompts),
                      cell.predicted_fail ? "F" : "A");
            add_exact(bundle.script,
                      strategy::make_judge_request(example, options.judge,
                                                   options.prompts),
                      cell.predicted_fail ? "FAIL" : "PASS");

            // Claim pipeline: the response is extracted into one triple, the
            // short context becomes a synthetic claim, and the checker reply
            // forces the planted prediction (accuracy 1.0 vs epsilon).
            const core::Triple claim{
                id, "reports",
                std::string("outcome ") + (cell.predicted_fail ? "contradicted"
                                                               : "supported"),
                std::nullopt};
            add_exact(bundle.script,
                      strategy::make_extraction_request(example.response,
                                                        options.claims,
                                                        options.prompts),
                      strategy::render_triple(claim));

            const core::Triple reference{example.context, "asserts", "",
                                         std::nullopt};
            const std::array<core::Triple, 1> references{reference};
            add_exact(bundle.script,
                      strategy::make_checking_request(claim, references,
                                                      example.context,
                                                      options.claims,
                                                      options.prompts),
                      cell.predicted_fail ? "CONTRADICTION" : "ENTAILMENT");
        }
    }
    return bundle;
}

}  // namespace verity::data
