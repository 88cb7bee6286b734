// Command-line front end: simulate, sweep, selfcheck.
//
// Exit codes: 0 ok, 2 configuration error, 3 numeric error, 4 I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "walkoff/config.hpp"
#include "walkoff/errors.hpp"
#include "walkoff/scenarios.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream in(list);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw walkoff::ConfigError("--values: not a number '" + tok + "'");
    }
  }
  return out;
}

void apply_overrides(walkoff::RunConfig& cfg, const std::string& engine, const std::string& outdir) {
  if (engine == "closed") cfg.engine = walkoff::Engine::closed_form;
  if (engine == "oracle") cfg.engine = walkoff::Engine::oracle;
  if (!outdir.empty()) cfg.outdir = outdir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon amplitude of type-I PDC in walk-off crystal stacks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string engine;
  std::string outdir;
  app.add_option("--engine", engine, "TPA engine (overrides config)")
      ->check(CLI::IsMember({"closed", "oracle"}));
  app.add_option("--outdir", outdir, "Output directory (overrides config)");

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Evaluate the configured stacks and write outputs");
  simulate->add_option("config", config_path, "Run configuration file")->required();

  std::string param;
  std::string values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Asymmetry and Schmidt number versus one parameter");
  sweep_cmd->add_option("config", config_path, "Run configuration file")->required();
  sweep_cmd->add_option("--param", param, "pump_fwhm or L_total")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values (um or mm)")->required();

  int n = 41;
  auto* check = app.add_subcommand("selfcheck", "Closed form against the quadrature oracle");
  check->add_option("--n", n, "Grid points per axis")->check(CLI::Range(16, 401));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*simulate) {
      walkoff::RunConfig cfg = walkoff::load_config(config_path);
      apply_overrides(cfg, engine, outdir);
      const walkoff::RunReport report = walkoff::run_scenarios(cfg);
      std::printf("alpha = %.6f deg, walk-off = %.6f deg, grid = %d x %d over +-%.4g mrad (%s, %s)\n",
                  report.pm.alpha * 57.29577951308232, report.pm.theta_walkoff * 57.29577951308232,
                  report.grid.n, report.grid.n, report.grid.theta_max * 1e3,
                  walkoff::engine_name(report.engine).c_str(), report.simd_backend.c_str());
      for (const auto& s : report.scenarios) {
        std::printf("%-13s swap_asym %.4e  skewness %+.4e  bend %+.4e rad  K %.4f\n", s.name.c_str(),
                    s.asymmetry.swap_asym, s.asymmetry.marginal_skewness, s.asymmetry.bend_offset,
                    s.schmidt_K);
      }
      std::printf("wrote %zu files and report.json to %s\n", report.manifest.size(),
                  cfg.outdir.string().c_str());
    } else if (*sweep_cmd) {
      walkoff::RunConfig cfg = walkoff::load_config(config_path);
      apply_overrides(cfg, engine, outdir);
      const auto result =
          walkoff::sweep(cfg, walkoff::parse_sweep_parameter(param), parse_values(values));
      for (const auto& r : result.rows) {
        std::printf("%10.4g  %-13s swap_asym %.4e  skewness %+.4e  K %.4f\n", r.value,
                    r.stack.c_str(), r.swap_asym, r.skewness, r.K);
      }
      if (!result.single_aniso_trend.empty()) {
        std::printf("single_aniso swap_asym vs %s: %s\n", param.c_str(),
                    result.single_aniso_trend.c_str());
      }
      std::printf("wrote %s\n", result.csv_path.c_str());
    } else if (*check) {
      walkoff::QuadratureSpec quad;
      bool ok = true;
      for (const auto& row : walkoff::selfcheck(n, quad)) {
        const bool pass = row.max_deviation < 1e-6;
        ok = ok && pass;
        std::printf("%-13s max | |F_closed| - |F_oracle| | = %.3e  (oracle change %.1e)  %s\n",
                    row.stack.c_str(), row.max_deviation, row.oracle_change, pass ? "ok" : "FAIL");
      }
      return ok ? kOk : kNumeric;
    }
  } catch (const walkoff::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const walkoff::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  } catch (const walkoff::NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kNumeric;
  } catch (const walkoff::DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  }
  return kOk;
}
