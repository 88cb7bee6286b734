#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "walkoff/analysis.hpp"
#include "walkoff/grid.hpp"

namespace walkoff::io {

/// %.17g, enough digits to round-trip any double.
std::string format_double(double v);

/// Long format: theta_s_rad,theta_i_rad,re_F,im_F,abs2_F; signal angle varies slowest.
std::string grid_csv(const TPAGrid& grid);
/// theta_rad,p
std::string distribution_csv(const AngularDistribution& d);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
/// Strict reader for the numeric CSVs above; throws IoError on malformed input.
CsvTable parse_csv(std::string_view text);

/// 16-bit binary PGM (P5) of |F|^2, linearly mapped to [0, 65535] by the panel peak.
/// Columns run over theta_s (left to right), rows over theta_i (top = largest).
std::string intensity_pgm(const TPAGrid& grid);

std::string sha256_hex(std::string_view bytes);

void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace walkoff::io
