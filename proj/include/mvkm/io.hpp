#pragma once

#include <filesystem>
#include <string>

#include "mvkm/metrics.hpp"
#include "mvkm/solver.hpp"
#include "mvkm/types.hpp"

#include <json.hpp>

namespace mvkm {

// Dataset interchange format:
//   manifest JSON  { "name": str, "views": [path, ...],
//                    "labels": path|null, "has_header": bool }
//   view CSV       one sample per row, comma-separated decimal floats
//   labels CSV     one integer per row
// View/label paths are resolved relative to the manifest's directory.
// Doubles are written in shortest round-trip form, so save followed by load
// reproduces the matrices bit for bit.

/// Shortest decimal string that parses back to exactly this double.
std::string format_double(double value);

MultiViewDataset load_dataset(const std::filesystem::path& manifest_path);

/// Writes manifest.json, view<k>.csv per view, and labels.csv when labels
/// are present. Returns the manifest path.
std::filesystem::path save_dataset(const MultiViewDataset& ds,
                                   const std::filesystem::path& directory);

/// Tidy scatter rows "view,sample,label,x,y" for 2-D views.
void write_scatter_csv(const MultiViewDataset& ds, const std::filesystem::path& file);

nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const MetricReport& report);
nlohmann::json to_json(const FitResult& result);

std::string metric_csv_header();
std::string metric_csv_row(const MetricReport& report);

void write_text_file(const std::filesystem::path& file, const std::string& content);
std::string read_text_file(const std::filesystem::path& file);

}  // namespace mvkm
