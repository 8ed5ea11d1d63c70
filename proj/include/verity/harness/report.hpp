/// @file report.hpp
/// @brief Run reports: per-cell matrices, DOR, cost, and ratio tables.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "verity/core/types.hpp"
#include "verity/data/prevalence.hpp"
#include "verity/metrics/dor.hpp"

namespace verity::harness {

struct CellSourceStats {
    core::ConfusionMatrix matrix;
    metrics::DorResult dor;  // recomputed from the matrix on load
    double cost = 0.0;
    std::uint64_t errors = 0;
};

/// One (strategy, model) grid cell.
struct CellReport {
    std::string strategy;
    std::string model;
    std::map<std::string, CellSourceStats> per_source;
    CellSourceStats pooled;  // pooled matrix = merge of per-source matrices
    bool failed = false;
    std::string error_summary;
    std::optional<double> threshold_used;  // claim-extraction cells only

    std::string system_id() const { return strategy + "/" + model; }
};

struct RunReport {
    std::vector<CellReport> cells;
    data::PrevalenceStats prevalence;
    std::string baseline;  // system id "strategy/model"
    nlohmann::ordered_json config_echo;

    nlohmann::ordered_json to_json() const;
    static RunReport from_json(const nlohmann::json& doc);

    void save(const std::filesystem::path& run_dir) const;
    static RunReport load(const std::filesystem::path& run_dir);
};

/// Overall (pooled) scope or a single source dataset.
struct Scope {
    std::optional<std::string> source;

    static Scope overall() { return Scope{}; }
    static Scope for_source(std::string name) { return Scope{std::move(name)}; }
};

struct TableRow {
    std::string strategy;
    std::string model;
    double dor_ratio = 0.0;   // raw
    double cost_ratio = 0.0;  // raw
    std::string dor_ratio_2dp;
    std::string cost_ratio_2dp;
};

/// Rows (strategy, model, DOR-over-baseline, cost-over-baseline) in cell
/// order, rounded half-up to two decimals for display; raw values retained.
/// Throws IncompleteReport when a cell failed or lacks the requested source.
std::vector<TableRow> report_tables(const RunReport& report, const Scope& scope);

/// Half-up rounding to two decimals, rendered with exactly two digits.
std::string format_ratio_2dp(double value);

/// CSV with header "strategy,model,dor_ratio,cost_ratio".
std::string tables_to_csv(const std::vector<TableRow>& rows);

nlohmann::ordered_json tables_to_json(const std::vector<TableRow>& rows);

}  // namespace verity::harness
