#include "verity/data/schema.hpp"

#include <fstream>
#include <set>

#include "verity/core/confusion.hpp"
#include "verity/data/adapters.hpp"
#include "verity/error.hpp"

namespace verity::data {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string require_string(const json& record, const char* field, std::size_t line) {
    if (!record.contains(field)) {
        throw SchemaError(line, field, "missing");
    }
    if (!record.at(field).is_string()) {
        throw SchemaError(line, field, "must be a string");
    }
    return record.at(field).get<std::string>();
}

std::string meta_value_to_string(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

}  // namespace

std::string to_jsonl_line(const core::Example& example) {
    ordered_json record;
    record["id"] = example.id;
    record["task"] = std::string(core::to_string(example.task));
    record["question"] = example.question;
    record["context"] = example.context;
    record["response"] = example.response;
    record["label"] = std::string(core::to_string(example.label));
    record["source"] = example.source;
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : example.meta) meta[key] = value;
    record["meta"] = std::move(meta);
    return record.dump();
}

core::Example example_from_json(const json& record, std::size_t line) {
    if (!record.is_object()) throw SchemaError(line, "<record>", "must be an object");

    core::Example example;
    example.id = core::trim(require_string(record, "id", line));
    if (example.id.empty()) throw SchemaError(line, "id", "must be non-empty");

    const std::string task_text = require_string(record, "task", line);
    auto task = core::task_from_string(task_text);
    if (!task) throw SchemaError(line, "task", "unknown task '" + task_text + "'");
    example.task = *task;

    example.question = core::trim(require_string(record, "question", line));
    example.context = core::trim(require_string(record, "context", line));
    example.response = core::trim(require_string(record, "response", line));

    const std::string label_text = require_string(record, "label", line);
    auto label = core::label_from_string(label_text);
    if (!label) throw SchemaError(line, "label", "must be PASS or FAIL");
    example.label = *label;

    example.source = core::trim(require_string(record, "source", line));

    if (record.contains("meta")) {
        if (!record.at("meta").is_object()) {
            throw SchemaError(line, "meta", "must be an object");
        }
        for (const auto& [key, value] : record.at("meta").items()) {
            example.meta[key] = meta_value_to_string(value);
        }
    }

    if (auto bad = example.invalid_field()) {
        throw SchemaError(line, *bad,
                          "violates the emptiness rules of task '" +
                              std::string(core::to_string(example.task)) + "'");
    }
    return example;
}

std::vector<core::Example> load_normalized(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_normalized: cannot open " + path.string());

    std::vector<core::Example> examples;
    std::set<std::string> seen_ids;
    std::string line_text;
    std::size_t line = 0;
    while (std::getline(in, line_text)) {
        ++line;
        if (core::trim(line_text).empty()) continue;
        json record;
        try {
            record = json::parse(line_text);
        } catch (const json::exception& e) {
            throw SchemaError(line, "<json>", e.what());
        }
        core::Example example = example_from_json(record, line);
        if (!seen_ids.insert(example.id).second) {
            throw DuplicateId("load_normalized: duplicate id '" + example.id +
                              "' at line " + std::to_string(line));
        }
        examples.push_back(std::move(example));
    }
    return examples;
}

void save_normalized(const std::filesystem::path& path,
                     std::span<const core::Example> examples) {
    std::ofstream out(path);
    if (!out) throw ConfigError("save_normalized: cannot write " + path.string());
    for (const auto& example : examples) {
        out << to_jsonl_line(example) << '\n';
    }
}

void DatasetManifest::validate() const {
    static const std::set<std::string> kAdapters{"normalized", "summeval", "qags",
                                                 "truthfulqa"};
    if (name.empty()) throw ConfigError("manifest: dataset name must be non-empty");
    if (!kAdapters.count(adapter)) {
        throw ConfigError("manifest: dataset '" + name + "' has unknown adapter '" +
                          adapter + "'");
    }
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_manifest: cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("load_manifest " + path.string() + ": " + e.what());
    }

    Manifest manifest;
    for (const auto& item : doc.value("datasets", json::array())) {
        DatasetManifest dataset;
        dataset.name = item.at("name").get<std::string>();
        const std::string task_text = item.value("task", "summarization");
        auto task = core::task_from_string(task_text);
        if (!task) {
            throw ConfigError("manifest: dataset '" + dataset.name +
                              "' has unknown task '" + task_text + "'");
        }
        dataset.task = *task;
        std::filesystem::path data_path = item.at("path").get<std::string>();
        if (data_path.is_relative()) {
            data_path = path.parent_path() / data_path;
        }
        dataset.path = std::move(data_path);
        dataset.adapter = item.value("adapter", "normalized");
        if (item.contains("expected_count")) {
            dataset.expected_count = item.at("expected_count").get<std::size_t>();
        }
        dataset.binarization = item.value("binarization", "");
        dataset.validate();
        manifest.datasets.push_back(std::move(dataset));
    }
    if (manifest.datasets.empty()) {
        throw ConfigError("load_manifest: manifest lists no datasets");
    }
    return manifest;
}

std::vector<core::Example> load_dataset(const DatasetManifest& dataset,
                                        std::vector<std::string>* warnings) {
    dataset.validate();

    std::vector<core::Example> examples;
    if (dataset.adapter == "normalized") {
        examples = load_normalized(dataset.path);
        for (auto& example : examples) {
            if (example.task != dataset.task && warnings) {
                warnings->push_back("dataset '" + dataset.name + "': example '" +
                                    example.id + "' task differs from manifest task");
            }
        }
    } else {
        std::ifstream in(dataset.path);
        if (!in) {
            throw ConfigError("load_dataset: cannot open " + dataset.path.string());
        }
        std::set<std::string> seen_ids;
        std::string line_text;
        std::size_t line = 0;
        while (std::getline(in, line_text)) {
            ++line;
            if (core::trim(line_text).empty()) continue;
            json record;
            try {
                record = json::parse(line_text);
            } catch (const json::exception& e) {
                throw SchemaError(line, "<json>", e.what());
            }
            std::vector<core::Example> adapted;
            if (dataset.adapter == "summeval") {
                adapted.push_back(adapt_summeval(record, line, dataset.name));
            } else if (dataset.adapter == "qags") {
                adapted.push_back(adapt_qags(record, line, dataset.name));
            } else {  // truthfulqa
                adapted = explode_truthfulqa(truthfulqa_row_from_json(record, line),
                                             dataset.name, warnings);
            }
            for (auto& example : adapted) {
                if (!seen_ids.insert(example.id).second) {
                    throw DuplicateId("load_dataset: duplicate id '" + example.id +
                                      "' at line " + std::to_string(line));
                }
                examples.push_back(std::move(example));
            }
        }
    }

    if (dataset.expected_count && examples.size() != *dataset.expected_count) {
        throw ConfigError("dataset '" + dataset.name + "': expected " +
                          std::to_string(*dataset.expected_count) + " examples, got " +
                          std::to_string(examples.size()));
    }
    return examples;
}

}  // namespace verity::data
