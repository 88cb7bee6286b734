#include "walkoff/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <json.hpp>

#include "walkoff/errors.hpp"
#include "walkoff/io.hpp"
#include "walkoff/kernels.hpp"

namespace walkoff {

namespace {

constexpr int kSchmidtRank = 8;

std::vector<CrystalStack> build_stacks(const RunConfig& cfg, double theta) {
  std::vector<CrystalStack> out;
  if (cfg.preset == "custom") {
    std::vector<CrystalSlab> slabs = cfg.custom_slabs;
    for (auto& s : slabs) s.length *= 1e-3;
    out.emplace_back("custom", std::move(slabs), theta);
    return out;
  }
  const StandardStacks std_stacks = make_standard_stacks(*cfg.L_total_mm * 1e-3, theta);
  for (const auto& name : cfg.scenario_names()) out.push_back(std_stacks.by_name(name));
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Emitter {
 public:
  explicit Emitter(std::filesystem::path root) : root_(std::move(root)) {}

  void emit(const std::string& relative, const std::string& bytes) {
    io::write_file(root_ / relative, bytes);
    manifest_.push_back({relative, io::sha256_hex(bytes), bytes.size()});
  }
  std::vector<ManifestEntry> take() { return std::move(manifest_); }

 private:
  std::filesystem::path root_;
  std::vector<ManifestEntry> manifest_;
};

}  // namespace

Setup resolve_setup(const RunConfig& cfg) {
  UniaxialMedium medium = load_medium(cfg.medium_file);
  const PhaseMatchingSolution pm = solve_phase_matching(medium, cfg.lambda_p_nm * 1e-3);
  const PumpBeam pump(cfg.lambda_p_nm * 1e-9, cfg.pump_fwhm_um * 1e-6);
  std::vector<CrystalStack> stacks = build_stacks(cfg, pm.theta_walkoff);
  GridSpec grid;
  if (cfg.grid_half_range_mrad) {
    grid = GridSpec::symmetric(*cfg.grid_half_range_mrad * 1e-3, cfg.grid_n);
  } else {
    std::vector<const CrystalStack*> ptrs;
    for (const auto& s : stacks) ptrs.push_back(&s);
    grid = auto_grid(ptrs, pump, pm, cfg.grid_n);
  }
  grid.validate();
  return Setup{std::move(medium), pm, pump, std::move(stacks), grid};
}

ScenarioResult analyze_grid(const TPAGrid& grid) {
  ScenarioResult r;
  r.name = grid.stack_name;
  r.asymmetry = asymmetry_report(grid);
  const int rank = static_cast<int>(std::min<Eigen::Index>(kSchmidtRank, grid.size()));
  const SchmidtSpectrum spectrum = schmidt_decompose(grid, rank);
  r.schmidt_K = spectrum.K;
  r.lambdas.assign(spectrum.lambdas.begin(), spectrum.lambdas.begin() + rank);
  try {
    r.double_gauss = double_gauss_fit(grid);
    r.double_gauss_ok = true;
  } catch (const NumericError&) {
    r.double_gauss_ok = false;
  }
  const double c = r.asymmetry.conditioning_angle;
  r.conditioning_angles = {-c, 0.0, c};
  r.oracle_stats = grid.oracle_stats;
  r.raw_peak = grid.raw_peak;
  return r;
}

RunReport run_scenarios(const RunConfig& cfg) {
  const Setup setup = resolve_setup(cfg);
  RunReport report;
  report.medium = setup.medium.name;
  report.lambda_p_nm = cfg.lambda_p_nm;
  report.pump_fwhm_um = cfg.pump_fwhm_um;
  report.L_total_mm = *cfg.L_total_mm;
  report.pm = setup.pm;
  report.grid = setup.grid;
  report.engine = cfg.engine;
  report.simd_backend = std::string(kernels::backend_name(kernels::active_backend()));

  Emitter out(cfg.outdir);
  for (const auto& stack : setup.stacks) {
    TPAGrid grid;
    try {
      grid = evaluate_grid(stack, setup.pump, setup.pm, setup.grid, cfg.engine, cfg.quad);
    } catch (const NumericError& e) {
      throw NumericError("scenario " + stack.name() + ": " + e.what());
    }
    ScenarioResult res = analyze_grid(grid);
    const std::string dir = stack.name() + "/";
    out.emit(dir + "grid.csv", io::grid_csv(grid));
    out.emit(dir + "intensity.pgm", io::intensity_pgm(grid));
    out.emit(dir + "marginal_signal.csv",
             io::distribution_csv(unconditional_distribution(grid, Axis::signal)));
    out.emit(dir + "marginal_idler.csv",
             io::distribution_csv(unconditional_distribution(grid, Axis::idler)));
    const char* labels[] = {"minus", "zero", "plus"};
    for (int k = 0; k < 3; ++k) {
      out.emit(dir + "conditional_" + labels[k] + ".csv",
               io::distribution_csv(conditional_distribution(grid, res.conditioning_angles[k])));
    }
    report.scenarios.push_back(std::move(res));
  }
  report.manifest = out.take();
  report.timestamp = utc_timestamp();
  io::write_file(cfg.outdir / "report.json", report_json(report));
  return report;
}

std::string report_json(const RunReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["metadata"] = {{"timestamp", report.timestamp}, {"simd_backend", report.simd_backend}};
  j["inputs"] = {{"medium", report.medium},
                 {"lambda_p_nm", report.lambda_p_nm},
                 {"pump_fwhm_um", report.pump_fwhm_um},
                 {"L_total_mm", report.L_total_mm}};
  j["phase_matching"] = {{"alpha_rad", report.pm.alpha},
                         {"alpha_deg", report.pm.alpha * 180.0 / std::numbers::pi},
                         {"walkoff_rad", report.pm.theta_walkoff},
                         {"walkoff_deg", report.pm.theta_walkoff * 180.0 / std::numbers::pi},
                         {"k_p_rad_per_m", report.pm.k_p},
                         {"k_s_rad_per_m", report.pm.k_s},
                         {"k_i_rad_per_m", report.pm.k_i},
                         {"collinear_mismatch_rad_per_m", report.pm.collinear_mismatch()}};
  j["grid"] = {{"theta_min_rad", report.grid.theta_min},
               {"theta_max_rad", report.grid.theta_max},
               {"n", report.grid.n}};
  j["engine"] = engine_name(report.engine);
  json scenarios = json::array();
  for (const auto& s : report.scenarios) {
    json e;
    e["name"] = s.name;
    e["swap_asym"] = s.asymmetry.swap_asym;
    e["marginal_skewness"] = s.asymmetry.marginal_skewness;
    e["bend_offset_rad"] = s.asymmetry.bend_offset;
    e["conditioning_angles_rad"] = s.conditioning_angles;
    e["schmidt_K"] = s.schmidt_K;
    e["schmidt_lambdas"] = s.lambdas;
    if (s.double_gauss_ok) {
      e["double_gauss"] = {{"a_rad2", s.double_gauss.a},
                           {"b_rad2", s.double_gauss.b},
                           {"residual", s.double_gauss.residual},
                           {"points", s.double_gauss.points},
                           {"applicable", s.double_gauss.applicable}};
    } else {
      e["double_gauss"] = nullptr;
    }
    e["raw_peak_abs_F"] = s.raw_peak;
    if (report.engine == Engine::oracle) {
      e["oracle"] = {{"max_relative_change", s.oracle_stats.max_change},
                     {"max_z_panels_per_slab", s.oracle_stats.max_z_panels}};
    }
    scenarios.push_back(std::move(e));
  }
  j["scenarios"] = std::move(scenarios);
  json manifest = json::array();
  for (const auto& m : report.manifest) {
    manifest.push_back({{"path", m.path}, {"sha256", m.sha256}, {"bytes", m.bytes}});
  }
  j["manifest"] = std::move(manifest);
  return j.dump(2) + "\n";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "pump_fwhm") return SweepParameter::pump_fwhm;
  if (name == "L_total") return SweepParameter::L_total;
  throw ConfigError("sweep parameter must be pump_fwhm or L_total, got '" + name + "'");
}

SweepResult sweep(const RunConfig& cfg, SweepParameter parameter, const std::vector<double>& values) {
  if (values.size() < 2) throw ConfigError("need >= 2 values");
  if (parameter == SweepParameter::L_total && cfg.preset == "custom") {
    throw ConfigError("L_total sweep needs a preset stack, not slabs_mm");
  }
  SweepResult result;
  result.parameter = parameter;
  std::vector<double> aniso;
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("sweep values must be positive");
    RunConfig c = cfg;
    (parameter == SweepParameter::pump_fwhm ? c.pump_fwhm_um : c.L_total_mm.emplace()) = v;
    const Setup setup = resolve_setup(c);
    for (const auto& stack : setup.stacks) {
      const TPAGrid grid = evaluate_grid(stack, setup.pump, setup.pm, setup.grid, c.engine, c.quad);
      const AsymmetryReport rep = asymmetry_report(grid);
      const SchmidtSpectrum sp = schmidt_decompose(grid, 1);
      result.rows.push_back({v, stack.name(), rep.swap_asym, rep.marginal_skewness, sp.K});
      if (stack.name() == "single_aniso") aniso.push_back(rep.swap_asym);
    }
  }
  if (aniso.size() == values.size()) {
    bool inc = true, dec = true;
    for (std::size_t k = 1; k < aniso.size(); ++k) {
      const bool up = values[k] > values[k - 1];
      inc = inc && (aniso[k] > aniso[k - 1]) == up;
      dec = dec && (aniso[k] < aniso[k - 1]) == up;
    }
    result.single_aniso_trend = inc ? "increasing" : dec ? "decreasing" : "non-monotone";
  }
  const std::string pname = parameter == SweepParameter::pump_fwhm ? "pump_fwhm" : "L_total";
  std::string csv = std::string(parameter == SweepParameter::pump_fwhm ? "pump_fwhm_um" : "L_total_mm") +
                    ",stack,swap_asym,skewness,K\n";
  for (const auto& r : result.rows) {
    csv += io::format_double(r.value) + "," + r.stack + "," + io::format_double(r.swap_asym) + "," +
           io::format_double(r.skewness) + "," + io::format_double(r.K) + "\n";
  }
  result.csv_path = (cfg.outdir / ("sweep_" + pname + ".csv")).string();
  io::write_file(result.csv_path, csv);
  return result;
}

std::vector<SelfcheckRow> selfcheck(int n, const QuadratureSpec& quad) {
  RunConfig cfg;
  cfg.medium_file = default_medium_path();
  cfg.lambda_p_nm = 354.7;
  cfg.pump_fwhm_um = 70.0;
  cfg.L_total_mm = 6.0;
  cfg.grid_n = n;
  const Setup setup = resolve_setup(cfg);
  std::vector<SelfcheckRow> rows;
  for (const auto& stack : setup.stacks) {
    const TPAGrid closed = evaluate_grid(stack, setup.pump, setup.pm, setup.grid, Engine::closed_form);
    const TPAGrid oracle = evaluate_grid(stack, setup.pump, setup.pm, setup.grid, Engine::oracle, quad);
    const double dev = (closed.values.cwiseAbs() - oracle.values.cwiseAbs()).cwiseAbs().maxCoeff();
    rows.push_back({stack.name(), dev, oracle.oracle_stats.max_change});
  }
  return rows;
}

}  // namespace walkoff
