#include "verity/harness/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "verity/client/mock.hpp"
#include "verity/data/prevalence.hpp"
#include "verity/data/schema.hpp"
#include "verity/error.hpp"
#include "verity/harness/plot.hpp"
#include "verity/harness/runner.hpp"
#include "verity/metrics/calibrate.hpp"

namespace verity::harness {

namespace {

constexpr const char* kVersion = "0.1.0";

int validation_failure(const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
}

int runtime_failure(const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
}

int cmd_run(const std::string& config_path, const std::string& mock_script_path,
            bool no_cache, std::optional<std::uint64_t> seed) {
    RunConfig config = RunConfig::load(config_path);
    if (no_cache) config.cache_enabled = false;
    if (seed) config.seed = *seed;

    BackendFactory factory;
    if (!mock_script_path.empty()) {
        const auto script = client::MockScript::load_file(mock_script_path);
        factory = [script](const client::ModelSpec& spec) {
            return std::static_pointer_cast<client::ModelBackend>(
                std::make_shared<client::MockBackend>(script, spec));
        };
    }

    const auto outcome = run(config, factory);
    for (const auto& cell : outcome.report.cells) {
        const auto& m = cell.pooled.matrix;
        std::cout << cell.system_id() << ": tp=" << m.tp << " fp=" << m.fp
                  << " fn=" << m.fn << " tn=" << m.tn;
        if (m.total() > 0) {
            std::cout << " dor=" << cell.pooled.dor.dor << " [" << cell.pooled.dor.ci_low
                      << ", " << cell.pooled.dor.ci_high << "]";
        }
        std::cout << " cost=" << cell.pooled.cost;
        if (cell.failed) std::cout << " FAILED (" << cell.error_summary << ")";
        std::cout << '\n';
    }
    std::cout << "backend calls: " << outcome.stats.backend_calls
              << ", cache hits: " << outcome.stats.cache_hits << '\n';
    std::cout << "report written to " << config.output_dir.string() << '\n';
    return 0;
}

int cmd_report(const std::string& run_dir, const std::string& scope_text,
               const std::string& format) {
    const RunReport report = RunReport::load(run_dir);
    const Scope scope = scope_text == "overall" ? Scope::overall()
                                                : Scope::for_source(scope_text);
    const auto rows = report_tables(report, scope);
    if (format == "json") {
        std::cout << tables_to_json(rows).dump(2) << '\n';
    } else {
        std::cout << tables_to_csv(rows);
    }
    return 0;
}

int cmd_plot(const std::string& run_dir, const std::string& out_path,
             const std::string& scope_text) {
    const RunReport report = RunReport::load(run_dir);
    const Scope scope = scope_text == "overall" ? Scope::overall()
                                                : Scope::for_source(scope_text);
    emit_scatter(report, out_path, scope);
    std::cout << "plot written to " << out_path << '\n';
    return 0;
}

int cmd_calibrate(const std::string& run_dir, const std::string& strategy_id) {
    const auto verdicts_dir = std::filesystem::path(run_dir) / "verdicts";
    if (!std::filesystem::is_directory(verdicts_dir)) {
        throw ConfigError("calibrate: no verdicts directory under " + run_dir);
    }
    const std::string prefix = strategy_id + "__";
    bool found = false;
    for (const auto& entry : std::filesystem::directory_iterator(verdicts_dir)) {
        const std::string stem = entry.path().stem().string();
        if (entry.path().extension() != ".jsonl" || stem.rfind(prefix, 0) != 0) {
            continue;
        }
        found = true;
        const auto scored = load_verdict_scores(entry.path());
        if (scored.empty()) {
            throw EmptyInput("calibrate: no scored verdicts for strategy '" +
                             strategy_id + "' in " + entry.path().string());
        }
        std::vector<std::string> warnings;
        const double threshold = metrics::calibrate_threshold(scored, &warnings);
        std::cout << strategy_id << "/" << stem.substr(prefix.size())
                  << ": threshold=" << threshold << " (" << scored.size()
                  << " scored examples)\n";
        for (const auto& warning : warnings) std::cerr << "warning: " << warning << '\n';
    }
    if (!found) {
        throw ConfigError("calibrate: no verdict files for strategy '" + strategy_id +
                          "'");
    }
    return 0;
}

int cmd_validate(const std::string& manifest_path) {
    const auto manifest = data::load_manifest(manifest_path);
    bool ok = true;
    for (const auto& dataset : manifest.datasets) {
        std::vector<std::string> warnings;
        try {
            const auto examples = data::load_dataset(dataset, &warnings);
            const auto stats = data::prevalence(examples);
            std::cout << dataset.name << ": " << examples.size() << " examples, "
                      << stats.overall.fail << " FAIL / " << stats.overall.pass
                      << " PASS (prevalence " << stats.overall.prevalence() << ")\n";
        } catch (const Error& e) {
            ok = false;
            std::cerr << dataset.name << ": INVALID: " << e.what() << '\n';
        }
        for (const auto& warning : warnings) {
            std::cerr << dataset.name << ": warning: " << warning << '\n';
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int cli(const std::vector<std::string>& args) {
    CLI::App app{"verity: hallucination-detection evaluation harness"};
    app.require_subcommand(1);

    // run
    std::string config_path;
    std::string mock_script_path;
    bool no_cache = false;
    std::optional<std::uint64_t> seed;
    auto* run_cmd = app.add_subcommand("run", "evaluate a strategy x model grid");
    run_cmd->add_option("--config", config_path, "run config JSON file")->required();
    run_cmd->add_option("--mock-script", mock_script_path,
                        "mock script file; replaces every model backend");
    run_cmd->add_flag("--no-cache", no_cache, "disable the response cache");
    run_cmd->add_option("--seed", seed, "override the config seed");

    // report
    std::string report_run_dir;
    std::string report_scope = "overall";
    std::string report_format = "csv";
    auto* report_cmd = app.add_subcommand("report", "print the ratio table");
    report_cmd->add_option("--run-dir", report_run_dir, "run directory")->required();
    report_cmd->add_option("--scope", report_scope, "overall or a source name");
    report_cmd->add_option("--format", report_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // plot
    std::string plot_run_dir;
    std::string plot_out;
    std::string plot_scope = "overall";
    auto* plot_cmd = app.add_subcommand("plot", "write the ratio scatter SVG");
    plot_cmd->add_option("--run-dir", plot_run_dir, "run directory")->required();
    plot_cmd->add_option("--out", plot_out, "output SVG path")->required();
    plot_cmd->add_option("--scope", plot_scope, "overall or a source name");

    // calibrate
    std::string calibrate_run_dir;
    std::string calibrate_strategy;
    auto* calibrate_cmd =
        app.add_subcommand("calibrate", "pick the DOR-maximizing score threshold");
    calibrate_cmd->add_option("--run-dir", calibrate_run_dir, "run directory")
        ->required();
    calibrate_cmd->add_option("--strategy", calibrate_strategy, "strategy id")
        ->required();

    // validate-data
    std::string manifest_path;
    auto* validate_cmd =
        app.add_subcommand("validate-data", "validate the datasets in a manifest");
    validate_cmd->add_option("--manifest", manifest_path, "manifest JSON file")
        ->required();

    auto* version_cmd = app.add_subcommand("version", "print the version");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints usage itself; keep the spec exit-code contract.
        const int code = app.exit(e, std::cout, std::cerr);
        return code == 0 ? 0 : 1;
    }

    try {
        if (version_cmd->parsed()) {
            std::cout << "verity " << kVersion << '\n';
            return 0;
        }
        if (run_cmd->parsed()) {
            return cmd_run(config_path, mock_script_path, no_cache, seed);
        }
        if (report_cmd->parsed()) {
            return cmd_report(report_run_dir, report_scope, report_format);
        }
        if (plot_cmd->parsed()) {
            return cmd_plot(plot_run_dir, plot_out, plot_scope);
        }
        if (calibrate_cmd->parsed()) {
            return cmd_calibrate(calibrate_run_dir, calibrate_strategy);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(manifest_path);
        }
    } catch (const ConfigError& e) {
        return validation_failure(e);
    } catch (const SchemaError& e) {
        return validation_failure(e);
    } catch (const DuplicateId& e) {
        return validation_failure(e);
    } catch (const UnknownModel& e) {
        return validation_failure(e);
    } catch (const MissingAnnotation& e) {
        return validation_failure(e);
    } catch (const EmptyAnswers& e) {
        return validation_failure(e);
    } catch (const EmptyInput& e) {
        return validation_failure(e);
    } catch (const MissingBaseline& e) {
        return validation_failure(e);
    } catch (const NonPositiveBaseline& e) {
        return validation_failure(e);
    } catch (const IncompleteReport& e) {
        return validation_failure(e);
    } catch (const EmptyMatrix& e) {
        return validation_failure(e);
    } catch (const std::exception& e) {
        return runtime_failure(e);
    }
    return 1;
}

}  // namespace verity::harness
