#include "verity/core/confusion.hpp"

#include <cctype>

namespace verity::core {

ConfusionMatrix confusion_from_pairs(
    std::span<const std::pair<Label, Label>> pairs) {
    ConfusionMatrix cm;
    for (const auto& [predicted, gold] : pairs) {
        if (predicted == Label::Fail) {
            gold == Label::Fail ? ++cm.tp : ++cm.fp;
        } else {
            gold == Label::Fail ? ++cm.fn : ++cm.tn;
        }
    }
    return cm;
}

ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b) {
    return ConfusionMatrix{a.tp + b.tp, a.fp + b.fp, a.fn + b.fn, a.tn + b.tn};
}

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return std::string(text.substr(begin, end - begin));
}

std::size_t whitespace_token_count(std::string_view text) {
    std::size_t count = 0;
    bool in_token = false;
    for (char ch : text) {
        const bool space = std::isspace(static_cast<unsigned char>(ch)) != 0;
        if (!space && !in_token) ++count;
        in_token = !space;
    }
    return count;
}

}  // namespace verity::core
