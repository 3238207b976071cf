#pragma once

#include <filesystem>

#include "biphoton/material_database.hpp"
#include "json_reports.hpp"

namespace biphoton::cli {

/// Runs every reference scenario, writes per-scenario JSON and grids plus
/// summary.json and summary.txt into `dir`, and returns the summary.
json paper_repro(const MaterialDatabase& db, const std::filesystem::path& dir);

}  // namespace biphoton::cli
