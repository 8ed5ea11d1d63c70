#include "verity/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "verity/client/cache.hpp"
#include "verity/client/http.hpp"
#include "verity/client/pricing.hpp"
#include "verity/core/confusion.hpp"
#include "verity/error.hpp"
#include "verity/metrics/calibrate.hpp"
#include "verity/metrics/ratios.hpp"

namespace verity::harness {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::filesystem::path resolve(const std::filesystem::path& base,
                              std::filesystem::path p) {
    if (p.is_relative() && !base.empty()) return base / p;
    return p;
}

strategy::StrategyConfig strategy_from_json(const json& doc) {
    const std::string kind_text = doc.at("kind").get<std::string>();
    auto kind = strategy::strategy_kind_from_string(kind_text);
    if (!kind) throw ConfigError("run config: unknown strategy kind '" + kind_text + "'");

    auto config = strategy::StrategyConfig::defaults(*kind);
    config.id = doc.value("id", config.id);
    for (const auto& [role, id] :
         doc.value("prompt_templates", json::object()).items()) {
        config.prompt_template_ids[role] = id.get<std::string>();
    }
    if (doc.contains("pass_grades")) {
        config.pass_grades.clear();
        for (const auto& text : doc.at("pass_grades")) {
            auto grade = strategy::Grade::from_string(text.get<std::string>());
            if (!grade) {
                throw ConfigError("run config: bad grade '" +
                                  text.get<std::string>() + "' in pass_grades");
            }
            config.pass_grades.insert(*grade);
        }
    }
    config.score_threshold = doc.value("score_threshold", config.score_threshold);
    if (doc.contains("weights")) {
        const auto& w = doc.at("weights");
        config.weights.w_e = w.value("w_e", config.weights.w_e);
        config.weights.w_c = w.value("w_c", config.weights.w_c);
        config.weights.w_r = w.value("w_r", config.weights.w_r);
        config.weights.epsilon = w.value("epsilon", config.weights.epsilon);
    }
    config.size_threshold_tokens =
        doc.value("size_threshold_tokens", config.size_threshold_tokens);
    config.strict_parsing = doc.value("strict_parsing", config.strict_parsing);
    config.validate();
    return config;
}

client::ModelSpec model_from_json(const json& doc) {
    client::ModelSpec spec;
    spec.name = doc.at("name").get<std::string>();
    spec.endpoint = doc.value("endpoint", "");
    spec.price_in = doc.value("price_in", 0.0);
    spec.price_out = doc.value("price_out", 0.0);
    spec.temperature = doc.value("temperature", 0.0);
    spec.max_concurrency = doc.value("max_concurrency", 4);
    spec.timeout = std::chrono::milliseconds(doc.value("timeout_ms", 30000));
    spec.api_key_env = doc.value("api_key_env", spec.api_key_env);
    spec.validate();
    return spec;
}

ordered_json strategy_echo(const strategy::StrategyConfig& config) {
    ordered_json out;
    out["id"] = config.id;
    out["kind"] = std::string(to_string(config.kind));
    if (config.kind == strategy::StrategyKind::Grading) {
        auto grades = ordered_json::array();
        for (const auto& grade : config.pass_grades) grades.push_back(grade.to_string());
        out["pass_grades"] = std::move(grades);
    }
    if (config.kind == strategy::StrategyKind::ClaimExtraction) {
        out["score_threshold"] = config.score_threshold;
        out["weights"] = ordered_json{{"w_e", config.weights.w_e},
                                      {"w_c", config.weights.w_c},
                                      {"w_r", config.weights.w_r},
                                      {"epsilon", config.weights.epsilon}};
        out["size_threshold_tokens"] = config.size_threshold_tokens;
    }
    out["strict_parsing"] = config.strict_parsing;
    return out;
}

ordered_json model_echo(const client::ModelSpec& spec) {
    return ordered_json{{"name", spec.name},
                        {"endpoint", spec.endpoint},
                        {"price_in", spec.price_in},
                        {"price_out", spec.price_out},
                        {"temperature", spec.temperature},
                        {"max_concurrency", spec.max_concurrency},
                        {"timeout_ms", spec.timeout.count()},
                        {"api_key_env", spec.api_key_env}};
}

std::vector<std::string> template_roles(strategy::StrategyKind kind) {
    if (kind == strategy::StrategyKind::ClaimExtraction) {
        return {"extraction_system", "extraction_user", "checking_system",
                "checking_user"};
    }
    return {"system", "user"};
}

std::vector<VerdictRecord> evaluate_all(std::span<const core::Example> examples,
                                        const strategy::StrategyConfig& config,
                                        const strategy::PromptLibrary& prompts,
                                        client::ModelBackend& backend,
                                        int concurrency) {
    std::vector<VerdictRecord> records(examples.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= examples.size()) break;
            const auto& example = examples[i];
            VerdictRecord record;
            record.example_id = example.id;
            record.source = example.source;
            record.gold = example.label;
            try {
                record.verdict = strategy::run_strategy(example, config, prompts,
                                                        backend, &record.warnings);
            } catch (const std::exception& e) {
                // Errors count as prediction Fail with an error flag; the
                // aggregation excludes them from the matrices.
                record.errored = true;
                record.error = e.what();
                record.verdict.prediction = core::Label::Fail;
                record.verdict.strategy = config.id;
                record.verdict.model = backend.spec().name;
            }
            records[i] = std::move(record);
        }
    };

    const int workers = std::max(
        1, std::min<int>(concurrency, static_cast<int>(examples.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
        for (auto& thread : threads) thread.join();
    }
    return records;
}

}  // namespace

void RunConfig::validate() const {
    if (pairs.empty()) throw ConfigError("run config: no (strategy, model) pairs");
    if (output_dir.empty()) throw ConfigError("run config: output_dir is required");
    if (concurrency < 1) throw ConfigError("run config: concurrency must be >= 1");
    if (error_rate_threshold < 0.0 || error_rate_threshold > 1.0) {
        throw ConfigError("run config: error_rate_threshold must be in [0, 1]");
    }
    bool baseline_present = false;
    for (const auto& pair : pairs) {
        pair.strategy.validate();
        pair.model.validate();
        if (pair.strategy.id + "/" + pair.model.name == baseline) {
            baseline_present = true;
        }
    }
    if (!baseline_present) {
        throw ConfigError("run config: baseline '" + baseline +
                          "' does not match any strategy/model pair");
    }
    if (cache_enabled && cache_dir.empty()) {
        throw ConfigError("run config: cache enabled but cache_dir is empty");
    }
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("run config: cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("run config " + path.string() + ": " + e.what());
    }

    const auto base = path.parent_path();
    RunConfig config;
    try {
        config.manifest_path = resolve(base, doc.at("manifest").get<std::string>());
        for (const auto& pair_doc : doc.at("pairs")) {
            RunPair pair;
            pair.strategy = strategy_from_json(pair_doc.at("strategy"));
            pair.model = model_from_json(pair_doc.at("model"));
            config.pairs.push_back(std::move(pair));
        }
        config.baseline = doc.at("baseline").get<std::string>();
        const std::string threshold_source = doc.value("threshold_source", "fixed");
        if (threshold_source == "fixed") {
            config.threshold_source = ThresholdSource::Fixed;
        } else if (threshold_source == "calibrated") {
            config.threshold_source = ThresholdSource::Calibrated;
        } else {
            throw ConfigError("run config: threshold_source must be fixed or calibrated");
        }
        config.output_dir = resolve(base, doc.at("output_dir").get<std::string>());
        config.cache_enabled = doc.value("cache", false);
        if (doc.contains("cache_dir")) {
            config.cache_dir = resolve(base, doc.at("cache_dir").get<std::string>());
        } else if (config.cache_enabled) {
            config.cache_dir = config.output_dir / "cache";
        }
        config.concurrency = doc.value("concurrency", 4);
        config.seed = doc.value("seed", std::uint64_t{0});
        config.error_rate_threshold =
            doc.value("error_rate_threshold", config.error_rate_threshold);
        if (doc.contains("prompts_dir")) {
            config.prompts_dir = resolve(base, doc.at("prompts_dir").get<std::string>());
        }
        if (doc.contains("pricing")) {
            config.pricing_path = resolve(base, doc.at("pricing").get<std::string>());
        }
    } catch (const json::exception& e) {
        throw ConfigError("run config " + path.string() + ": " + e.what());
    }
    config.validate();
    return config;
}

std::string verdict_record_to_jsonl(const VerdictRecord& record) {
    ordered_json doc;
    doc["id"] = record.example_id;
    doc["source"] = record.source;
    doc["gold"] = std::string(core::to_string(record.gold));
    doc["prediction"] = std::string(core::to_string(record.verdict.prediction));
    if (record.verdict.score) doc["score"] = *record.verdict.score;
    if (record.verdict.claims) {
        auto claims = ordered_json::array();
        for (const auto& [triple, claim_class] : *record.verdict.claims) {
            claims.push_back(ordered_json{
                {"subject", triple.subject},
                {"predicate", triple.predicate},
                {"object", triple.object},
                {"class", std::string(core::to_string(claim_class))}});
        }
        doc["claims"] = std::move(claims);
    }
    doc["usage"] = ordered_json{{"prompt_tokens", record.verdict.usage.prompt_tokens},
                                {"completion_tokens", record.verdict.usage.completion_tokens}};
    doc["strategy"] = record.verdict.strategy;
    doc["model"] = record.verdict.model;
    if (record.errored) doc["error"] = record.error;
    if (!record.warnings.empty()) doc["warnings"] = record.warnings;
    return doc.dump();
}

std::vector<std::pair<double, core::Label>> load_verdict_scores(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_verdict_scores: cannot open " + path.string());
    std::vector<std::pair<double, core::Label>> scored;
    std::string line_text;
    std::size_t line = 0;
    while (std::getline(in, line_text)) {
        ++line;
        if (line_text.empty()) continue;
        json record;
        try {
            record = json::parse(line_text);
        } catch (const json::exception& e) {
            throw SchemaError(line, "<json>", e.what());
        }
        if (record.value("error", std::string{}).empty() == false) continue;
        if (!record.contains("score")) continue;
        const auto gold = core::label_from_string(record.at("gold").get<std::string>());
        if (!gold) throw SchemaError(line, "gold", "must be PASS or FAIL");
        scored.emplace_back(record.at("score").get<double>(), *gold);
    }
    return scored;
}

RunOutcome run(const RunConfig& config, BackendFactory factory) {
    config.validate();

    const auto manifest = data::load_manifest(config.manifest_path);
    std::vector<core::Example> examples;
    std::vector<std::string> load_warnings;
    for (const auto& dataset : manifest.datasets) {
        auto loaded = data::load_dataset(dataset, &load_warnings);
        examples.insert(examples.end(), std::make_move_iterator(loaded.begin()),
                        std::make_move_iterator(loaded.end()));
    }
    // Aggregation is a deterministic fold over (source, id) order.
    std::sort(examples.begin(), examples.end(),
              [](const core::Example& a, const core::Example& b) {
                  return std::tie(a.source, a.id) < std::tie(b.source, b.id);
              });

    strategy::PromptLibrary prompts;
    if (config.prompts_dir) prompts.load_dir(*config.prompts_dir);

    client::PricingTable pricing;
    if (config.pricing_path) pricing = client::load_pricing(*config.pricing_path);

    if (!factory) {
        factory = [](const client::ModelSpec& spec) {
            return std::static_pointer_cast<client::ModelBackend>(
                std::make_shared<client::HttpBackend>(spec));
        };
    }

    std::shared_ptr<client::ResponseCache> cache;
    if (config.cache_enabled) {
        cache = std::make_shared<client::ResponseCache>(config.cache_dir);
    }

    RunOutcome outcome;
    RunReport& report = outcome.report;
    report.baseline = config.baseline;
    report.prevalence = data::prevalence(examples);

    std::filesystem::create_directories(config.output_dir / "verdicts");

    ordered_json pairs_echo = ordered_json::array();

    for (const auto& pair : config.pairs) {
        client::ModelSpec spec = pair.model;
        if (spec.price_in == 0.0 && spec.price_out == 0.0 && !pricing.empty()) {
            auto it = pricing.find(spec.name);
            if (it != pricing.end()) {
                spec.price_in = it->second.input;
                spec.price_out = it->second.output;
            }
        }

        auto inner = factory(spec);
        std::shared_ptr<client::ModelBackend> backend = inner;
        std::shared_ptr<client::CachingBackend> caching;
        if (cache) {
            caching = std::make_shared<client::CachingBackend>(inner, cache);
            backend = caching;
        }

        auto records = evaluate_all(examples, pair.strategy, prompts, *backend,
                                    config.concurrency);

        CellReport cell;
        cell.strategy = pair.strategy.id;
        cell.model = spec.name;

        if (pair.strategy.kind == strategy::StrategyKind::ClaimExtraction) {
            double threshold = pair.strategy.score_threshold;
            if (config.threshold_source == RunConfig::ThresholdSource::Calibrated) {
                std::vector<std::pair<double, core::Label>> scored;
                for (const auto& record : records) {
                    if (!record.errored && record.verdict.score) {
                        scored.emplace_back(*record.verdict.score, record.gold);
                    }
                }
                if (!scored.empty()) {
                    std::vector<std::string> calibration_warnings;
                    threshold =
                        metrics::calibrate_threshold(scored, &calibration_warnings);
                    for (auto& record : records) {
                        if (!record.errored && record.verdict.score) {
                            record.verdict.prediction =
                                *record.verdict.score < threshold
                                    ? core::Label::Fail
                                    : core::Label::Pass;
                        }
                    }
                }
            }
            cell.threshold_used = threshold;
        }

        // Per-source fold: matrices over non-errored records, cost over all
        // records (tokens were spent either way).
        std::map<std::string, std::vector<std::pair<core::Label, core::Label>>> pairs_by_source;
        std::map<std::string, std::vector<core::TokenUsage>> usage_by_source;
        std::map<std::string, std::uint64_t> errors_by_source;
        for (const auto& record : records) {
            usage_by_source[record.source].push_back(record.verdict.usage);
            if (record.errored) {
                ++errors_by_source[record.source];
            } else {
                pairs_by_source[record.source].emplace_back(
                    record.verdict.prediction, record.gold);
            }
        }

        const metrics::ModelPricing cell_pricing{spec.price_in, spec.price_out};
        for (const auto& [source, usages] : usage_by_source) {
            CellSourceStats stats;
            auto pair_it = pairs_by_source.find(source);
            if (pair_it != pairs_by_source.end()) {
                stats.matrix = core::confusion_from_pairs(pair_it->second);
            }
            if (stats.matrix.total() > 0) stats.dor = metrics::dor(stats.matrix);
            stats.cost = metrics::cost_total(usages, cell_pricing);
            auto err_it = errors_by_source.find(source);
            stats.errors = err_it == errors_by_source.end() ? 0 : err_it->second;
            cell.pooled.matrix = core::merge(cell.pooled.matrix, stats.matrix);
            cell.pooled.cost += stats.cost;
            cell.pooled.errors += stats.errors;
            cell.per_source[source] = std::move(stats);
        }
        if (cell.pooled.matrix.total() > 0) {
            cell.pooled.dor = metrics::dor(cell.pooled.matrix);
        }

        const double error_fraction =
            records.empty() ? 0.0
                            : static_cast<double>(cell.pooled.errors) /
                                  static_cast<double>(records.size());
        if (cell.pooled.matrix.total() == 0) {
            cell.failed = true;
            cell.error_summary = "no scorable examples";
        } else if (error_fraction > config.error_rate_threshold) {
            cell.failed = true;
            cell.error_summary =
                std::to_string(cell.pooled.errors) + " of " +
                std::to_string(records.size()) + " examples errored";
        }

        // Persist per-example records sorted by (source, id); `records`
        // inherits that order from the sorted example list.
        const auto verdicts_path = config.output_dir / "verdicts" /
                                   (cell.strategy + "__" + cell.model + ".jsonl");
        std::ofstream verdicts_out(verdicts_path);
        if (!verdicts_out) {
            throw Error("run: cannot write " + verdicts_path.string());
        }
        for (const auto& record : records) {
            verdicts_out << verdict_record_to_jsonl(record) << '\n';
        }

        ordered_json pair_echo;
        pair_echo["strategy"] = strategy_echo(pair.strategy);
        pair_echo["model"] = model_echo(spec);
        ordered_json templates = ordered_json::object();
        for (const auto& role : template_roles(pair.strategy.kind)) {
            const std::string id = pair.strategy.template_id(role);
            templates[id] = prompts.hash(id);
        }
        pair_echo["prompt_template_hashes"] = std::move(templates);
        if (cell.threshold_used) pair_echo["threshold_used"] = *cell.threshold_used;
        pairs_echo.push_back(std::move(pair_echo));

        report.cells.push_back(std::move(cell));

        outcome.stats.backend_calls += inner->calls_made();
        if (caching) outcome.stats.cache_hits += caching->cache_hits();
    }

    ordered_json echo;
    echo["manifest"] = config.manifest_path.string();
    echo["baseline"] = config.baseline;
    echo["threshold_source"] =
        config.threshold_source == RunConfig::ThresholdSource::Fixed ? "fixed"
                                                                     : "calibrated";
    echo["seed"] = config.seed;
    echo["concurrency"] = config.concurrency;
    echo["cache"] = config.cache_enabled;
    echo["error_rate_threshold"] = config.error_rate_threshold;
    echo["pairs"] = std::move(pairs_echo);
    if (!load_warnings.empty()) echo["dataset_warnings"] = load_warnings;
    report.config_echo = echo;

    report.save(config.output_dir);
    {
        std::ofstream config_out(config.output_dir / "config.json");
        config_out << echo.dump(2) << '\n';
    }
    return outcome;
}

}  // namespace verity::harness
