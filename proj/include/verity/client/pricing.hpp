#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "verity/metrics/ratios.hpp"

namespace verity::client {

/// Model name -> prices per 1M tokens.
using PricingTable = std::map<std::string, metrics::ModelPricing>;

/// Loads a pricing file: a JSON object mapping model name to
/// {"input": number, "output": number}. Throws ConfigError on malformed
/// entries or negative prices.
PricingTable load_pricing(const std::filesystem::path& path);

/// Exact-name match; throws UnknownModel otherwise.
metrics::ModelPricing price_lookup(const PricingTable& table,
                                   const std::string& model);

}  // namespace verity::client
