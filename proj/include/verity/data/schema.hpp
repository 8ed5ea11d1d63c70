/// @file schema.hpp
/// @brief Normalized example files (one JSON object per line) and dataset
/// manifests.
///
/// Normalized schema, in canonical field order:
///   {"id","task","question","context","response","label","source","meta"}
/// with task in {"summarization","rag_qa","zero_context_qa"} and label in
/// {"PASS","FAIL"}. Loading then re-serializing a normalized file is
/// byte-stable.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "verity/core/types.hpp"

namespace verity::data {

/// Canonical single-line serialization (no trailing newline).
std::string to_jsonl_line(const core::Example& example);

/// Validates one parsed record; `line` is used for SchemaError reporting.
core::Example example_from_json(const nlohmann::json& record, std::size_t line);

/// Loads and validates a normalized file. Throws SchemaError (with line and
/// field) and DuplicateId.
std::vector<core::Example> load_normalized(const std::filesystem::path& path);

/// Writes canonical bytes: one object per line, canonical field order.
void save_normalized(const std::filesystem::path& path,
                     std::span<const core::Example> examples);

/// One dataset in a run manifest.
struct DatasetManifest {
    std::string name;
    core::TaskKind task = core::TaskKind::Summarization;
    std::filesystem::path path;
    std::string adapter;  // normalized | summeval | qags | truthfulqa
    std::optional<std::size_t> expected_count;
    std::string binarization;  // rule id, informational

    void validate() const;  // throws ConfigError on unknown adapter
};

struct Manifest {
    std::vector<DatasetManifest> datasets;
};

Manifest load_manifest(const std::filesystem::path& path);

/// Dispatches on the adapter id, stamps `source` with the dataset name, and
/// verifies expected_count when present.
std::vector<core::Example> load_dataset(const DatasetManifest& dataset,
                                        std::vector<std::string>* warnings = nullptr);

}  // namespace verity::data
