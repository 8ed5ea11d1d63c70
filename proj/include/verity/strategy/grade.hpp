/// @file grade.hpp
/// @brief US letter grades and reply parsing for the grading strategy.

#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace verity::strategy {

enum class GradeLetter { A, B, C, D, F };

/// Letter grade with an optional +/- modifier. F admits no modifier.
struct Grade {
    GradeLetter letter = GradeLetter::C;
    int modifier = 0;  // +1 for '+', -1 for '-', 0 for none

    /// Throws ConfigError when an F carries a modifier.
    static Grade make(GradeLetter letter, int modifier);

    /// "A", "a-", "B+"; also accepts the unicode minus sign.
    static std::optional<Grade> from_string(std::string_view text);

    std::string to_string() const;

    auto operator<=>(const Grade&) const = default;
};

using GradeSet = std::set<Grade>;

/// Returns the first standalone letter-grade token (with optional modifier)
/// found scanning the reply, case-insensitively. Tokens inside words are
/// ignored; a bare lowercase "a" is treated as the English article unless
/// the previous word is "grade". Throws ParseError when no grade is found.
Grade parse_grade(const std::string& reply);

/// Default pass set: {A, A-, B+, B}.
GradeSet default_pass_grades();

}  // namespace verity::strategy
