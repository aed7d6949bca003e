#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "entpdf/markers.hpp"
#include "entpdf/quantum.hpp"

namespace entpdf {

// All numbers in emitted files use 15 significant digits; parse/serialize
// round trips are byte-identical.
std::string format_double(double v);

// State files: {"rho": [[[re, im] x4] x4]}.
DensityMatrix read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho);

// Marker files mirror MarkerSet; absent fields are omitted, never null.
MarkerSet read_marker_file(const std::filesystem::path& path);
void write_marker_file(const std::filesystem::path& path, const MarkerSet& markers);
std::string marker_json(const MarkerSet& markers);

// CSV with a header row, 15-significant-digit cells, trailing newline.
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace entpdf
