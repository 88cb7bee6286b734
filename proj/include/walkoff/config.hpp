#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walkoff/geometry.hpp"
#include "walkoff/grid.hpp"
#include "walkoff/oracle.hpp"

namespace walkoff {

/// One simulation run. Physical inputs carry the unit named by their config key.
struct RunConfig {
  std::filesystem::path medium_file;  // defaults to the shipped BBO data
  double lambda_p_nm = 0.0;
  double pump_fwhm_um = 0.0;
  std::optional<double> L_total_mm;
  std::string preset = "all";             // single_iso | single_aniso | noncomp | comp | all | custom
  std::vector<CrystalSlab> custom_slabs;  // lengths in mm, set with preset == "custom"
  int grid_n = 201;
  std::optional<double> grid_half_range_mrad;  // unset: auto_grid
  Engine engine = Engine::closed_form;
  QuadratureSpec quad;
  std::filesystem::path outdir = "out";

  /// Stack names the run will produce, in output order.
  std::vector<std::string> scenario_names() const;
};

/// Strict `key = value` parser; `#` starts a comment. Relative medium paths resolve
/// against `base_dir`. Throws ConfigError carrying the 1-based line number.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace walkoff
