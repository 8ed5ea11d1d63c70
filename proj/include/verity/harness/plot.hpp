#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "verity/harness/report.hpp"

namespace verity::harness {

/// Self-contained SVG scatter of the ratio table: one labeled point per
/// (strategy, model) at (cost-over-baseline, DOR-over-baseline). Output
/// bytes are deterministic for a fixed report.
std::string scatter_svg(const std::vector<TableRow>& rows);

/// Renders the report's ratio table for a scope and writes the SVG file.
void emit_scatter(const RunReport& report, const std::filesystem::path& out_path,
                  const Scope& scope = Scope::overall());

}  // namespace verity::harness
