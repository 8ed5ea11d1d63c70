#include "verity/strategy/prompts.hpp"

#include <fstream>
#include <sstream>

#include "verity/core/hash.hpp"
#include "verity/error.hpp"

namespace verity::strategy {

namespace {

constexpr const char* kGradingSystem =
    "You are a strict grader assessing responses for factual accuracy.";

constexpr const char* kGradingUser =
    R"(Grade the response for factual accuracy against the reference material.
Use the US letter scale A, B, C, D, F; + and - modifiers are allowed on A through D.
Reply with the grade only.

Question: {question}
Reference: {context}
Response: {response}

Grade:)";

constexpr const char* kJudgeSystem =
    "You are a careful judge of whether answers are supported by their sources.";

constexpr const char* kJudgeUser =
    R"(Decide whether the answer is fully supported by the question and context.
Reply with exactly one word: PASS if every claim in the answer is supported,
FAIL if any claim is unsupported or contradicted.

Question: {question}
Context: {context}
Answer: {response}

Verdict:)";

constexpr const char* kExtractionSystem =
    "You extract atomic factual claims from text.";

constexpr const char* kExtractionUser =
    R"(List every atomic factual claim in the text as a triple, one per line, in the
exact format: subject | predicate | object
Output only the triples.

Text: {response})";

constexpr const char* kCheckingSystem =
    "You classify claims against reference material.";

constexpr const char* kCheckingUser =
    R"(Classify the claim against the reference triples and the reference text.
Reply with exactly one word: ENTAILMENT if the claim is supported,
CONTRADICTION if it is refuted, NEUTRAL otherwise.

Claim: {claim}
Reference triples:
{reference_triples}
Reference text: {context})";

}  // namespace

PromptLibrary::PromptLibrary() {
    templates_ = {
        {"grading_system", kGradingSystem},
        {"grading_user", kGradingUser},
        {"judge_system", kJudgeSystem},
        {"judge_user", kJudgeUser},
        {"extraction_system", kExtractionSystem},
        {"extraction_user", kExtractionUser},
        {"checking_system", kCheckingSystem},
        {"checking_user", kCheckingUser},
    };
}

void PromptLibrary::load_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError("prompt library: not a directory: " + dir.string());
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::ifstream in(entry.path());
        if (!in) throw ConfigError("prompt library: cannot read " + entry.path().string());
        std::ostringstream buffer;
        buffer << in.rdbuf();
        std::string text = buffer.str();
        // Trailing newline from the editor is not part of the template.
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
            text.pop_back();
        }
        templates_[entry.path().stem().string()] = std::move(text);
    }
}

const std::string& PromptLibrary::get(const std::string& id) const {
    auto it = templates_.find(id);
    if (it == templates_.end()) {
        throw ConfigError("prompt library: unknown template id '" + id + "'");
    }
    return it->second;
}

bool PromptLibrary::contains(const std::string& id) const {
    return templates_.count(id) > 0;
}

std::string PromptLibrary::hash(const std::string& id) const {
    return core::fnv1a_hex(get(id));
}

std::vector<std::string> PromptLibrary::ids() const {
    std::vector<std::string> out;
    out.reserve(templates_.size());
    for (const auto& [id, text] : templates_) out.push_back(id);
    return out;
}

std::string PromptLibrary::render(
    const std::string& text, const std::map<std::string, std::string>& values) {
    std::string out = text;
    for (const auto& [name, value] : values) {
        const std::string placeholder = "{" + name + "}";
        std::size_t pos = 0;
        while ((pos = out.find(placeholder, pos)) != std::string::npos) {
            out.replace(pos, placeholder.size(), value);
            pos += value.size();
        }
    }
    return out;
}

}  // namespace verity::strategy
