#include "verity/strategy/grade.hpp"

#include <cctype>
#include <vector>

#include "verity/error.hpp"

namespace verity::strategy {

namespace {

constexpr std::string_view kUnicodeMinus = "\xe2\x88\x92";  // U+2212

std::optional<GradeLetter> letter_from_char(char ch) {
    switch (std::toupper(static_cast<unsigned char>(ch))) {
        case 'A': return GradeLetter::A;
        case 'B': return GradeLetter::B;
        case 'C': return GradeLetter::C;
        case 'D': return GradeLetter::D;
        case 'F': return GradeLetter::F;
        default: return std::nullopt;
    }
}

bool is_word_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) != 0;
}

// Length of the modifier starting at text[pos], or 0.
std::size_t modifier_length(std::string_view text, std::size_t pos, int* sign) {
    if (pos >= text.size()) return 0;
    if (text[pos] == '+') {
        *sign = +1;
        return 1;
    }
    if (text[pos] == '-') {
        *sign = -1;
        return 1;
    }
    if (text.substr(pos, kUnicodeMinus.size()) == kUnicodeMinus) {
        *sign = -1;
        return kUnicodeMinus.size();
    }
    return 0;
}

std::string strip_non_word(std::string_view token) {
    std::string out;
    for (char ch : token) {
        if (is_word_char(ch)) out.push_back(ch);
    }
    return out;
}

std::string lowercase(std::string text) {
    for (char& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return text;
}

}  // namespace

Grade Grade::make(GradeLetter letter, int modifier) {
    if (letter == GradeLetter::F && modifier != 0) {
        throw ConfigError("grade: F admits no modifier");
    }
    if (modifier < -1 || modifier > 1) {
        throw ConfigError("grade: modifier must be -1, 0, or +1");
    }
    return Grade{letter, modifier};
}

std::optional<Grade> Grade::from_string(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto letter = letter_from_char(text[0]);
    if (!letter) return std::nullopt;
    int sign = 0;
    std::size_t len = 1 + modifier_length(text, 1, &sign);
    if (len != text.size()) return std::nullopt;
    if (*letter == GradeLetter::F && sign != 0) return std::nullopt;
    return Grade{*letter, sign};
}

std::string Grade::to_string() const {
    static constexpr const char* kLetters = "ABCDF";
    std::string out(1, kLetters[static_cast<int>(letter)]);
    if (modifier > 0) out.push_back('+');
    if (modifier < 0) out.push_back('-');
    return out;
}

Grade parse_grade(const std::string& reply) {
    // Whitespace-delimited tokens, tracking the previous word so a bare
    // lowercase "a" after "grade" still counts.
    std::vector<std::pair<std::size_t, std::size_t>> tokens;  // (begin, end)
    std::size_t i = 0;
    while (i < reply.size()) {
        while (i < reply.size() && std::isspace(static_cast<unsigned char>(reply[i]))) ++i;
        if (i >= reply.size()) break;
        std::size_t begin = i;
        while (i < reply.size() && !std::isspace(static_cast<unsigned char>(reply[i]))) ++i;
        tokens.emplace_back(begin, i);
    }

    std::string previous_word;
    for (const auto& [begin, end] : tokens) {
        std::string_view token = std::string_view(reply).substr(begin, end - begin);

        // Strip leading punctuation such as quotes or parens.
        std::size_t start = 0;
        while (start < token.size() && !is_word_char(token[start])) ++start;
        std::string_view body = token.substr(start);

        const std::string word = strip_non_word(token);
        if (!body.empty()) {
            if (auto letter = letter_from_char(body[0])) {
                int sign = 0;
                std::size_t len = 1 + modifier_length(body, 1, &sign);
                // Standalone: nothing word-like may follow the grade token.
                bool standalone = true;
                for (std::size_t k = len; k < body.size(); ++k) {
                    if (is_word_char(body[k])) {
                        standalone = false;
                        break;
                    }
                }
                if (standalone) {
                    const bool bare_lowercase_a =
                        body[0] == 'a' && sign == 0;
                    const bool article =
                        bare_lowercase_a && lowercase(previous_word) != "grade";
                    if (!article) {
                        if (*letter == GradeLetter::F) sign = 0;
                        return Grade{*letter, sign};
                    }
                }
            }
        }
        if (!word.empty()) previous_word = word;
    }
    throw ParseError("parse_grade: no letter grade found in reply");
}

GradeSet default_pass_grades() {
    return GradeSet{
        Grade{GradeLetter::A, 0},
        Grade{GradeLetter::A, -1},
        Grade{GradeLetter::B, +1},
        Grade{GradeLetter::B, 0},
    };
}

}  // namespace verity::strategy
