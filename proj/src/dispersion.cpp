#include "walkoff/dispersion.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "walkoff/errors.hpp"

namespace walkoff {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<double> parse_numbers(const std::string& value, int line) {
  std::vector<double> out;
  std::istringstream in(value);
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ConfigError("medium file: not a number '" + tok + "'", line);
    }
    out.push_back(v);
  }
  return out;
}

void check_range(const UniaxialMedium& m, double lambda_um) {
  if (!std::isfinite(lambda_um) || !m.in_range(lambda_um)) {
    std::ostringstream msg;
    msg << m.name << ": wavelength " << lambda_um << " um outside valid range [" << m.range_lo_um
        << ", " << m.range_hi_um << "] um";
    throw DomainError(msg.str());
  }
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2)) {
    throw DomainError("optic-axis angle must lie in [0, pi/2] rad, got " + std::to_string(alpha));
  }
}

}  // namespace

double Sellmeier::index(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  const auto& [a, b, c, d] = coeffs;
  return std::sqrt(a + b / (l2 - c) - d * l2);
}

UniaxialMedium parse_medium(std::string_view text) {
  UniaxialMedium m;
  bool have_o = false, have_e = false, have_range = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("medium file: expected key = value", line);
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key == "name") {
      m.name = value;
    } else if (key == "sellmeier_o" || key == "sellmeier_e") {
      const auto v = parse_numbers(value, line);
      if (v.size() != 4) throw ConfigError("medium file: " + key + " needs 4 coefficients", line);
      Sellmeier& target = key == "sellmeier_o" ? m.sellmeier_o : m.sellmeier_e;
      std::copy(v.begin(), v.end(), target.coeffs.begin());
      (key == "sellmeier_o" ? have_o : have_e) = true;
    } else if (key == "range_um") {
      const auto v = parse_numbers(value, line);
      if (v.size() != 2 || !(v[0] > 0.0) || !(v[1] > v[0])) {
        throw ConfigError("medium file: range_um needs 0 < lo < hi", line);
      }
      m.range_lo_um = v[0];
      m.range_hi_um = v[1];
      have_range = true;
    } else {
      throw ConfigError("medium file: unknown key '" + key + "'", line);
    }
  }
  if (m.name.empty() || !have_o || !have_e || !have_range) {
    throw ConfigError("medium file: name, sellmeier_o, sellmeier_e and range_um are required");
  }
  return m;
}

UniaxialMedium load_medium(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open medium file " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_medium(buf.str());
}

std::filesystem::path default_medium_path() {
  return std::filesystem::path(WALKOFF_DATA_DIR) / "bbo.medium";
}

double index_ordinary(const UniaxialMedium& medium, double lambda_um) {
  check_range(medium, lambda_um);
  return medium.sellmeier_o.index(lambda_um);
}

double index_extraordinary_principal(const UniaxialMedium& medium, double lambda_um) {
  check_range(medium, lambda_um);
  return medium.sellmeier_e.index(lambda_um);
}

double index_extraordinary_effective(const UniaxialMedium& medium, double lambda_um,
                                     double alpha) {
  check_alpha(alpha);
  const double no = index_ordinary(medium, lambda_um);
  const double ne = index_extraordinary_principal(medium, lambda_um);
  const double c = std::cos(alpha), s = std::sin(alpha);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

double walk_off_angle(const UniaxialMedium& medium, double lambda_um, double alpha) {
  const double n = index_extraordinary_effective(medium, lambda_um, alpha);
  const double no = index_ordinary(medium, lambda_um);
  const double ne = index_extraordinary_principal(medium, lambda_um);
  // d(1/n^2)/dalpha = sin(2 alpha) (1/ne^2 - 1/no^2)  =>  -(1/n) dn/dalpha = n^2/2 * that
  const double tan_theta =
      0.5 * n * n * std::sin(2.0 * alpha) * (1.0 / (ne * ne) - 1.0 / (no * no));
  return std::atan(tan_theta);
}

double phase_matching_angle(const UniaxialMedium& medium, double lambda_pump_um) {
  const double n_signal = index_ordinary(medium, 2.0 * lambda_pump_um);
  auto residual = [&](double alpha) {
    return index_extraordinary_effective(medium, lambda_pump_um, alpha) - n_signal;
  };
  double lo = 1.0 * kDeg, hi = 89.0 * kDeg;
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream msg;
    msg << medium.name << ": not phase-matchable at pump " << lambda_pump_um
        << " um (no sign change of n_eff - n_o over 1..89 deg)";
    throw PhaseMatchError(msg.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = residual(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  if (std::abs(residual(alpha)) >= 1e-12) {
    throw PhaseMatchError(medium.name + ": bisection stalled above 1e-12 index residual");
  }
  return alpha;
}

PhaseMatchingSolution solve_phase_matching(const UniaxialMedium& medium, double lambda_pump_um) {
  PhaseMatchingSolution pm;
  pm.alpha = phase_matching_angle(medium, lambda_pump_um);
  pm.theta_walkoff = walk_off_angle(medium, lambda_pump_um, pm.alpha);
  const double lp_m = lambda_pump_um * 1e-6;
  const double ls_m = 2.0 * lp_m;
  const double two_pi = 2.0 * std::numbers::pi;
  pm.k_p = two_pi * index_extraordinary_effective(medium, lambda_pump_um, pm.alpha) / lp_m;
  pm.k_s = two_pi * index_ordinary(medium, 2.0 * lambda_pump_um) / ls_m;
  pm.k_i = pm.k_s;
  return pm;
}

}  // namespace walkoff
