#include "walkoff/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "walkoff/dispersion.hpp"
#include "walkoff/errors.hpp"
#include "walkoff/io.hpp"

namespace walkoff {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& tok, const std::string& key, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": not a number '" + tok + "'", line);
  }
  return v;
}

std::string unit_of(const std::string& key) {
  for (const char* u : {"_nm", "_um", "_mm", "_mrad"}) {
    const std::string suffix(u);
    if (key.size() > suffix.size() && key.ends_with(suffix)) return suffix.substr(1);
  }
  return {};
}

/// Number with an optional trailing unit that must match the key suffix.
double parse_quantity(const std::string& value, const std::string& key, int line) {
  std::istringstream in(value);
  std::string num, unit, extra;
  in >> num >> unit >> extra;
  if (num.empty()) throw ConfigError(key + ": missing value", line);
  if (!extra.empty()) throw ConfigError(key + ": trailing text '" + extra + "'", line);
  if (!unit.empty()) {
    const std::string expected = unit_of(key);
    const bool micro_alias = expected == "um" && unit == "µm";
    if (unit != expected && !micro_alias) {
      throw ConfigError(key + ": bad unit '" + unit + "' (expected " +
                            (expected.empty() ? std::string("no unit") : expected) + ")",
                        line);
    }
  }
  return parse_number(num, key, line);
}

double positive(double v, const std::string& key, int line) {
  if (!(v > 0.0)) throw ConfigError(key + " must be positive", line);
  return v;
}

int positive_int(const std::string& value, const std::string& key, int line) {
  const double v = parse_quantity(value, key, line);
  if (!(v > 0.0) || v != std::floor(v) || v > 1e8) {
    throw ConfigError(key + " must be a positive integer", line);
  }
  return static_cast<int>(v);
}

std::vector<CrystalSlab> parse_slabs(const std::string& value, int line) {
  std::vector<CrystalSlab> slabs;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string s = trim(item);
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("slabs_mm: expected length:sign, got '" + s + "'", line);
    }
    const double len = positive(parse_number(trim(s.substr(0, colon)), "slabs_mm", line),
                                "slabs_mm length", line);
    const std::string sign = trim(s.substr(colon + 1));
    int sgn = 0;
    if (sign == "+1" || sign == "1" || sign == "+") sgn = +1;
    if (sign == "-1" || sign == "-") sgn = -1;
    if (sgn == 0) throw ConfigError("slabs_mm: sign must be +1 or -1, got '" + sign + "'", line);
    slabs.push_back({len, sgn});
  }
  if (slabs.empty()) throw ConfigError("slabs_mm: empty slab list", line);
  return slabs;
}

const std::set<std::string> kPresets = {"single_iso", "single_aniso", "noncomp", "comp", "all"};

}  // namespace

std::vector<std::string> RunConfig::scenario_names() const {
  if (preset == "all") return {"single_iso", "single_aniso", "noncomp", "comp"};
  return {preset};
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.medium_file = default_medium_path();
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line);
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line);
    if (!seen.emplace(key, line).second) throw ConfigError("duplicate key '" + key + "'", line);

    if (key == "medium_file") {
      std::filesystem::path p(value);
      cfg.medium_file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    } else if (key == "lambda_p_nm") {
      cfg.lambda_p_nm = positive(parse_quantity(value, key, line), key, line);
    } else if (key == "pump_fwhm_um") {
      cfg.pump_fwhm_um = positive(parse_quantity(value, key, line), key, line);
    } else if (key == "L_total_mm") {
      cfg.L_total_mm = positive(parse_quantity(value, key, line), key, line);
    } else if (key == "preset") {
      if (!kPresets.contains(value)) {
        throw ConfigError("preset must be one of single_iso, single_aniso, noncomp, comp, all",
                          line);
      }
      cfg.preset = value;
    } else if (key == "slabs_mm") {
      cfg.custom_slabs = parse_slabs(value, line);
    } else if (key == "grid_n") {
      cfg.grid_n = positive_int(value, key, line);
      if (cfg.grid_n < 16) throw ConfigError("grid_n must be at least 16", line);
    } else if (key == "grid_half_range_mrad") {
      cfg.grid_half_range_mrad = positive(parse_quantity(value, key, line), key, line);
    } else if (key == "engine") {
      if (value == "closed") {
        cfg.engine = Engine::closed_form;
      } else if (value == "oracle") {
        cfg.engine = Engine::oracle;
      } else {
        throw ConfigError("engine must be closed or oracle", line);
      }
    } else if (key == "quad_z_panels") {
      cfg.quad.z_panels = positive_int(value, key, line);
    } else if (key == "quad_z_order") {
      cfg.quad.z_order = positive_int(value, key, line);
    } else if (key == "quad_x_mode") {
      if (value == "numeric") {
        cfg.quad.x_mode = XIntegration::numeric;
      } else if (value == "analytic") {
        cfg.quad.x_mode = XIntegration::analytic;
      } else {
        throw ConfigError("quad_x_mode must be numeric or analytic", line);
      }
    } else if (key == "quad_x_nodes") {
      cfg.quad.x_nodes = positive_int(value, key, line);
    } else if (key == "quad_x_halfwidth_sigma") {
      cfg.quad.x_halfwidth_sigma = positive(parse_quantity(value, key, line), key, line);
    } else if (key == "quad_tol") {
      cfg.quad.tol = positive(parse_quantity(value, key, line), key, line);
    } else if (key == "quad_max_refinements") {
      const double v = parse_quantity(value, key, line);
      if (v < 0 || v != std::floor(v) || v > 12) {
        throw ConfigError("quad_max_refinements must be an integer in [0, 12]", line);
      }
      cfg.quad.max_refinements = static_cast<int>(v);
    } else if (key == "outdir") {
      cfg.outdir = value;
    } else {
      throw ConfigError("unknown key '" + key + "'", line);
    }
  }

  if (!seen.contains("lambda_p_nm")) throw ConfigError("missing key 'lambda_p_nm'");
  if (!seen.contains("pump_fwhm_um")) throw ConfigError("missing key 'pump_fwhm_um'");
  if (seen.contains("slabs_mm")) {
    if (seen.contains("preset")) {
      throw ConfigError("slabs_mm and preset are mutually exclusive", seen["slabs_mm"]);
    }
    cfg.preset = "custom";
    double total = 0.0;
    for (const auto& s : cfg.custom_slabs) total += s.length;
    if (cfg.L_total_mm && std::abs(*cfg.L_total_mm - total) > 1e-9 * total) {
      throw ConfigError("L_total_mm disagrees with the sum of slabs_mm", seen["L_total_mm"]);
    }
    cfg.L_total_mm = total;
  } else if (!cfg.L_total_mm) {
    throw ConfigError("missing key 'L_total_mm'");
  }
  if (cfg.quad.z_panels < 2) throw ConfigError("quad_z_panels must be at least 2", seen["quad_z_panels"]);
  if (cfg.quad.x_nodes < 2) throw ConfigError("quad_x_nodes must be at least 2", seen["quad_x_nodes"]);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_file(path), path.parent_path());
}

}  // namespace walkoff
