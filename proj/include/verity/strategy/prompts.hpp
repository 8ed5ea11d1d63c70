/// @file prompts.hpp
/// @brief Prompt template store with {name} placeholder rendering.
///
/// Templates are plain text files with named placeholders ({question},
/// {context}, {response}, {claim}, {reference_triples}). Built-in defaults
/// ship for every id; a template directory can override them. Run reports
/// record the hash of every template used, so edited prompts are visible in
/// the output.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace verity::strategy {

class PromptLibrary {
public:
    /// Starts with the built-in default templates.
    PromptLibrary();

    /// Overrides templates from <id>.txt files in a directory.
    void load_dir(const std::filesystem::path& dir);

    const std::string& get(const std::string& id) const;
    bool contains(const std::string& id) const;

    /// Stable fingerprint of a template's text.
    std::string hash(const std::string& id) const;

    std::vector<std::string> ids() const;

    /// Replaces every {name} occurrence with the mapped value.
    static std::string render(const std::string& text,
                              const std::map<std::string, std::string>& values);

private:
    std::map<std::string, std::string> templates_;
};

}  // namespace verity::strategy
