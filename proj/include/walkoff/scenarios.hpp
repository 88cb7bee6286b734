#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walkoff/analysis.hpp"
#include "walkoff/config.hpp"
#include "walkoff/dispersion.hpp"
#include "walkoff/schmidt.hpp"

namespace walkoff {

/// Everything a run needs, resolved from a RunConfig.
struct Setup {
  UniaxialMedium medium;
  PhaseMatchingSolution pm;
  PumpBeam pump;
  std::vector<CrystalStack> stacks;  // in scenario order
  GridSpec grid;
};

Setup resolve_setup(const RunConfig& cfg);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

struct ScenarioResult {
  std::string name;
  AsymmetryReport asymmetry;
  double schmidt_K = 0.0;
  std::vector<double> lambdas;  // leading Schmidt eigenvalues
  DoubleGaussFit double_gauss;
  bool double_gauss_ok = false;  // false when the fit had too few points
  std::vector<double> conditioning_angles;  // {-c, 0, +c}
  OracleStats oracle_stats;
  double raw_peak = 0.0;
};

struct RunReport {
  std::string medium;
  double lambda_p_nm = 0.0;
  double pump_fwhm_um = 0.0;
  double L_total_mm = 0.0;
  PhaseMatchingSolution pm;
  GridSpec grid;
  Engine engine = Engine::closed_form;
  std::string simd_backend;
  std::vector<ScenarioResult> scenarios;
  std::vector<ManifestEntry> manifest;
  std::string timestamp;  // metadata only, not part of any hashed output
};

/// Analysis of one evaluated grid (no file output).
ScenarioResult analyze_grid(const TPAGrid& grid);

/// Evaluates every requested stack, writes per-scenario files under cfg.outdir/<name>/
/// and report.json, and returns the report.
RunReport run_scenarios(const RunConfig& cfg);

std::string report_json(const RunReport& report);

enum class SweepParameter { pump_fwhm, L_total };

SweepParameter parse_sweep_parameter(const std::string& name);

struct SweepRow {
  double value = 0.0;  // um for pump_fwhm, mm for L_total
  std::string stack;
  double swap_asym = 0.0;
  double skewness = 0.0;
  double K = 0.0;
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::pump_fwhm;
  std::vector<SweepRow> rows;
  /// "increasing", "decreasing" or "non-monotone" for single_aniso swap asymmetry,
  /// empty when single_aniso is not part of the sweep.
  std::string single_aniso_trend;
  std::string csv_path;
};

/// Re-runs the configured stacks for each value and writes cfg.outdir/sweep_<param>.csv.
SweepResult sweep(const RunConfig& cfg, SweepParameter parameter, const std::vector<double>& values);

struct SelfcheckRow {
  std::string stack;
  double max_deviation = 0.0;  // L-inf of |F_closed| - |F_oracle| after peak normalization
  double oracle_change = 0.0;
};

/// Closed form against the quadrature oracle for the four standard stacks at
/// 354.7 nm, 70 um, 6 mm on an n x n grid.
std::vector<SelfcheckRow> selfcheck(int n = 41, const QuadratureSpec& quad = {});

}  // namespace walkoff
