/// @file runner.hpp
/// @brief Orchestration: run a strategy x model grid over a manifest of
/// datasets and persist the report.

#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "verity/client/backend.hpp"
#include "verity/data/schema.hpp"
#include "verity/harness/report.hpp"
#include "verity/strategy/claims.hpp"

namespace verity::harness {

struct RunPair {
    strategy::StrategyConfig strategy;
    client::ModelSpec model;
};

struct RunConfig {
    std::filesystem::path manifest_path;
    std::vector<RunPair> pairs;
    std::string baseline;  // "strategy_id/model_name"
    enum class ThresholdSource { Fixed, Calibrated };
    ThresholdSource threshold_source = ThresholdSource::Fixed;
    std::filesystem::path output_dir;
    bool cache_enabled = false;
    std::filesystem::path cache_dir;
    int concurrency = 4;
    std::uint64_t seed = 0;
    double error_rate_threshold = 0.01;  // cell fails above this error fraction
    std::optional<std::filesystem::path> prompts_dir;
    std::optional<std::filesystem::path> pricing_path;

    void validate() const;

    /// Loads a JSON run-config file; relative paths resolve against the
    /// config file's directory.
    static RunConfig load(const std::filesystem::path& path);
};

/// One per-example record inside a cell's verdicts file.
struct VerdictRecord {
    std::string example_id;
    std::string source;
    core::Label gold = core::Label::Pass;
    core::Verdict verdict;
    bool errored = false;
    std::string error;
    std::vector<std::string> warnings;
};

std::string verdict_record_to_jsonl(const VerdictRecord& record);

/// Reads (score, gold) pairs back from a cell's verdicts file, skipping
/// errored and score-less records.
std::vector<std::pair<double, core::Label>> load_verdict_scores(
    const std::filesystem::path& path);

struct RunStats {
    std::uint64_t backend_calls = 0;
    std::uint64_t cache_hits = 0;
};

struct RunOutcome {
    RunReport report;
    RunStats stats;
};

/// Builds a backend for a model spec; lets callers substitute mocks.
using BackendFactory =
    std::function<std::shared_ptr<client::ModelBackend>(const client::ModelSpec&)>;

/// Evaluates every example under every (strategy, model) pair, aggregates
/// per-source and pooled confusion matrices, computes DOR and cost plus
/// baseline ratios, and persists the run directory:
///   report.json, config.json, verdicts/<strategy>__<model>.jsonl
/// Verdict files are sorted by (source, example id) and contain no
/// timestamps, so identical runs produce identical bytes.
RunOutcome run(const RunConfig& config, BackendFactory factory = nullptr);

}  // namespace verity::harness
