#include "verity/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "verity/core/confusion.hpp"
#include "verity/error.hpp"
#include "verity/metrics/ratios.hpp"

namespace verity::harness {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json matrix_to_json(const core::ConfusionMatrix& cm) {
    return ordered_json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

core::ConfusionMatrix matrix_from_json(const json& doc) {
    core::ConfusionMatrix cm;
    cm.tp = doc.at("tp").get<std::uint64_t>();
    cm.fp = doc.at("fp").get<std::uint64_t>();
    cm.fn = doc.at("fn").get<std::uint64_t>();
    cm.tn = doc.at("tn").get<std::uint64_t>();
    return cm;
}

ordered_json stats_to_json(const CellSourceStats& stats) {
    ordered_json out;
    out["matrix"] = matrix_to_json(stats.matrix);
    if (stats.matrix.total() > 0) {
        out["dor"] = ordered_json{{"dor", stats.dor.dor},
                                  {"ln_dor", stats.dor.ln_dor},
                                  {"se_ln_dor", stats.dor.se_ln_dor},
                                  {"ci_low", stats.dor.ci_low},
                                  {"ci_high", stats.dor.ci_high},
                                  {"corrected", stats.dor.corrected}};
    }
    out["cost"] = stats.cost;
    out["errors"] = stats.errors;
    return out;
}

CellSourceStats stats_from_json(const json& doc) {
    CellSourceStats stats;
    stats.matrix = matrix_from_json(doc.at("matrix"));
    // DOR is derived data: always recompute from the matrix so stored
    // reports can never drift out of sync with their raw counts.
    if (stats.matrix.total() > 0) stats.dor = metrics::dor(stats.matrix);
    stats.cost = doc.value("cost", 0.0);
    stats.errors = doc.value("errors", std::uint64_t{0});
    return stats;
}

}  // namespace

ordered_json RunReport::to_json() const {
    ordered_json doc;
    doc["baseline"] = baseline;

    auto& cell_array = doc["cells"] = ordered_json::array();
    for (const auto& cell : cells) {
        ordered_json entry;
        entry["strategy"] = cell.strategy;
        entry["model"] = cell.model;
        if (cell.threshold_used) entry["threshold"] = *cell.threshold_used;
        entry["failed"] = cell.failed;
        if (!cell.error_summary.empty()) entry["error_summary"] = cell.error_summary;
        entry["pooled"] = stats_to_json(cell.pooled);
        ordered_json sources = ordered_json::object();
        for (const auto& [name, stats] : cell.per_source) {
            sources[name] = stats_to_json(stats);
        }
        entry["per_source"] = std::move(sources);
        cell_array.push_back(std::move(entry));
    }

    ordered_json prevalence_doc;
    prevalence_doc["overall"] = ordered_json{{"pass", prevalence.overall.pass},
                                             {"fail", prevalence.overall.fail},
                                             {"prevalence", prevalence.overall.prevalence()}};
    ordered_json per_source = ordered_json::object();
    for (const auto& [name, counts] : prevalence.per_source) {
        per_source[name] = ordered_json{{"pass", counts.pass},
                                        {"fail", counts.fail},
                                        {"prevalence", counts.prevalence()}};
    }
    prevalence_doc["per_source"] = std::move(per_source);
    doc["prevalence"] = std::move(prevalence_doc);

    // Ratio tables are stored for readers, and always recomputable from the
    // raw per-cell values above.
    ordered_json ratios;
    try {
        auto rows = report_tables(*this, Scope::overall());
        ordered_json overall = ordered_json::object();
        for (const auto& row : rows) {
            overall[row.strategy + "/" + row.model] =
                ordered_json{{"dor_ratio", row.dor_ratio}, {"cost_ratio", row.cost_ratio}};
        }
        ratios["overall"] = std::move(overall);
    } catch (const Error&) {
        ratios["overall"] = nullptr;
    }
    doc["ratios"] = std::move(ratios);

    doc["config"] = config_echo;
    return doc;
}

RunReport RunReport::from_json(const json& doc) {
    RunReport report;
    report.baseline = doc.value("baseline", "");
    for (const auto& entry : doc.value("cells", json::array())) {
        CellReport cell;
        cell.strategy = entry.at("strategy").get<std::string>();
        cell.model = entry.at("model").get<std::string>();
        if (entry.contains("threshold")) {
            cell.threshold_used = entry.at("threshold").get<double>();
        }
        cell.failed = entry.value("failed", false);
        cell.error_summary = entry.value("error_summary", "");
        for (const auto& [name, stats] : entry.value("per_source", json::object()).items()) {
            cell.per_source[name] = stats_from_json(stats);
        }
        if (!cell.per_source.empty()) {
            // Pooled stats are the fold of the per-source stats.
            CellSourceStats pooled;
            for (const auto& [name, stats] : cell.per_source) {
                pooled.matrix = core::merge(pooled.matrix, stats.matrix);
                pooled.cost += stats.cost;
                pooled.errors += stats.errors;
            }
            if (pooled.matrix.total() > 0) pooled.dor = metrics::dor(pooled.matrix);
            cell.pooled = pooled;
        } else if (entry.contains("pooled")) {
            cell.pooled = stats_from_json(entry.at("pooled"));
        }
        report.cells.push_back(std::move(cell));
    }

    if (doc.contains("prevalence")) {
        const auto& prevalence_doc = doc.at("prevalence");
        for (const auto& [name, counts] :
             prevalence_doc.value("per_source", json::object()).items()) {
            data::SourceCounts sc;
            sc.pass = counts.value("pass", std::uint64_t{0});
            sc.fail = counts.value("fail", std::uint64_t{0});
            report.prevalence.per_source[name] = sc;
            report.prevalence.overall.pass += sc.pass;
            report.prevalence.overall.fail += sc.fail;
        }
    }
    if (doc.contains("config")) {
        report.config_echo = doc.at("config").get<ordered_json>();
    }
    return report;
}

void RunReport::save(const std::filesystem::path& run_dir) const {
    std::filesystem::create_directories(run_dir);
    std::ofstream out(run_dir / "report.json");
    if (!out) {
        throw Error("report: cannot write " + (run_dir / "report.json").string());
    }
    out << to_json().dump(2) << '\n';
}

RunReport RunReport::load(const std::filesystem::path& run_dir) {
    const auto path = std::filesystem::is_directory(run_dir)
                          ? run_dir / "report.json"
                          : run_dir;
    std::ifstream in(path);
    if (!in) throw ConfigError("report: cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("report " + path.string() + ": " + e.what());
    }
    return from_json(doc);
}

std::vector<TableRow> report_tables(const RunReport& report, const Scope& scope) {
    if (report.cells.empty()) {
        throw IncompleteReport("report_tables: report has no cells");
    }

    std::map<std::string, double> dor_values;
    std::map<std::string, double> cost_values;
    for (const auto& cell : report.cells) {
        if (cell.failed) {
            throw IncompleteReport("report_tables: cell " + cell.system_id() +
                                   " failed: " + cell.error_summary);
        }
        const CellSourceStats* stats = nullptr;
        if (scope.source) {
            auto it = cell.per_source.find(*scope.source);
            if (it == cell.per_source.end()) {
                throw IncompleteReport("report_tables: cell " + cell.system_id() +
                                       " has no source '" + *scope.source + "'");
            }
            stats = &it->second;
        } else {
            stats = &cell.pooled;
        }
        if (stats->matrix.total() == 0) {
            throw IncompleteReport("report_tables: cell " + cell.system_id() +
                                   " has no scored examples in scope");
        }
        dor_values[cell.system_id()] = stats->dor.dor;
        cost_values[cell.system_id()] = stats->cost;
    }

    const auto dor_ratios = metrics::ratio_over_baseline(dor_values, report.baseline);
    const auto cost_ratios = metrics::ratio_over_baseline(cost_values, report.baseline);

    std::vector<TableRow> rows;
    rows.reserve(report.cells.size());
    for (const auto& cell : report.cells) {
        TableRow row;
        row.strategy = cell.strategy;
        row.model = cell.model;
        row.dor_ratio = dor_ratios.at(cell.system_id());
        row.cost_ratio = cost_ratios.at(cell.system_id());
        row.dor_ratio_2dp = format_ratio_2dp(row.dor_ratio);
        row.cost_ratio_2dp = format_ratio_2dp(row.cost_ratio);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_ratio_2dp(double value) {
    // Half-up in hundredths, then integer formatting: deterministic and
    // immune to printf's round-to-even.
    const long long cents = std::llround(value * 100.0);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%lld.%02lld", cents / 100,
                  std::llabs(cents % 100));
    return std::string(buffer);
}

std::string tables_to_csv(const std::vector<TableRow>& rows) {
    std::string out = "strategy,model,dor_ratio,cost_ratio\n";
    for (const auto& row : rows) {
        out += row.strategy + "," + row.model + "," + row.dor_ratio_2dp + "," +
               row.cost_ratio_2dp + "\n";
    }
    return out;
}

ordered_json tables_to_json(const std::vector<TableRow>& rows) {
    ordered_json out = ordered_json::array();
    for (const auto& row : rows) {
        out.push_back(ordered_json{{"strategy", row.strategy},
                                   {"model", row.model},
                                   {"dor_ratio", row.dor_ratio},
                                   {"cost_ratio", row.cost_ratio},
                                   {"dor_ratio_2dp", row.dor_ratio_2dp},
                                   {"cost_ratio_2dp", row.cost_ratio_2dp}});
    }
    return out;
}

}  // namespace verity::harness
