#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

namespace walkoff {

/// Coefficients A B C D of n^2 = A + B/(lambda^2 - C) - D lambda^2, lambda in um.
struct Sellmeier {
  std::array<double, 4> coeffs{};

  double index(double lambda_um) const;
};

/// Negative uniaxial crystal described by two Sellmeier fits.
struct UniaxialMedium {
  std::string name;
  Sellmeier sellmeier_o;
  Sellmeier sellmeier_e;
  double range_lo_um = 0.0;
  double range_hi_um = 0.0;

  bool in_range(double lambda_um) const {
    return lambda_um >= range_lo_um && lambda_um <= range_hi_um;
  }
};

/// Parses the key = value medium format (see data/bbo.medium).
UniaxialMedium parse_medium(std::string_view text);
UniaxialMedium load_medium(const std::filesystem::path& path);

/// Path of the BBO data file shipped with the repository.
std::filesystem::path default_medium_path();

double index_ordinary(const UniaxialMedium& medium, double lambda_um);
double index_extraordinary_principal(const UniaxialMedium& medium, double lambda_um);

/// Index of the extraordinary wave whose wavevector makes angle `alpha` with
/// the optic axis: 1/n^2 = cos^2(alpha)/n_o^2 + sin^2(alpha)/n_e^2.
double index_extraordinary_effective(const UniaxialMedium& medium, double lambda_um, double alpha);

/// Poynting-vector walk-off of the extraordinary wave, tan(theta) = -(1/n) dn/dalpha.
double walk_off_angle(const UniaxialMedium& medium, double lambda_um, double alpha);

/// Optic-axis angle for collinear, degenerate type-I (e -> o + o) phase matching.
/// Bisection on n_eff(lambda_p, alpha) - n_o(2 lambda_p) over (1 deg, 89 deg).
double phase_matching_angle(const UniaxialMedium& medium, double lambda_pump_um);

struct PhaseMatchingSolution {
  double alpha = 0.0;          // optic-axis angle, rad
  double theta_walkoff = 0.0;  // pump walk-off, rad
  double k_p = 0.0;            // rad/m
  double k_s = 0.0;
  double k_i = 0.0;

  /// k_p - k_s - k_i; zero at exact phase matching.
  double collinear_mismatch() const { return k_p - k_s - k_i; }
};

PhaseMatchingSolution solve_phase_matching(const UniaxialMedium& medium, double lambda_pump_um);

}  // namespace walkoff
