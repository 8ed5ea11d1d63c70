#include "verity/client/pricing.hpp"

#include <fstream>

#include <json.hpp>

#include "verity/error.hpp"

namespace verity::client {

PricingTable load_pricing(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("pricing table: cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("pricing table " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("pricing table: expected an object of model entries");
    }

    PricingTable table;
    for (const auto& [model, entry] : doc.items()) {
        if (!entry.is_object() || !entry.contains("input") || !entry.contains("output")) {
            throw ConfigError("pricing table: model '" + model +
                              "' needs {input, output} prices");
        }
        metrics::ModelPricing pricing;
        pricing.input = entry.at("input").get<double>();
        pricing.output = entry.at("output").get<double>();
        if (pricing.input < 0.0 || pricing.output < 0.0) {
            throw ConfigError("pricing table: model '" + model + "' has negative prices");
        }
        table[model] = pricing;
    }
    return table;
}

metrics::ModelPricing price_lookup(const PricingTable& table,
                                   const std::string& model) {
    auto it = table.find(model);
    if (it == table.end()) {
        throw UnknownModel("pricing table: unknown model '" + model + "'");
    }
    return it->second;
}

}  // namespace verity::client
