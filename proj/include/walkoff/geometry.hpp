#pragma once

#include <string>
#include <vector>

namespace walkoff {

/// Gaussian pump; `fwhm` is the FWHM of the intensity profile.
class PumpBeam {
 public:
  PumpBeam(double lambda_m, double fwhm_m);

  double wavelength() const { return lambda_; }
  double fwhm() const { return fwhm_; }
  /// Amplitude width of exp(-x^2 / 2 sigma^2): sigma = d / (2 sqrt(ln 2)).
  double sigma() const { return sigma_; }

 private:
  double lambda_;
  double fwhm_;
  double sigma_;
};

struct CrystalSlab {
  double length = 0.0;  // m
  int walkoff_sign = +1;
};

struct PathPoint {
  double z = 0.0;
  double x = 0.0;
};

/// Ordered slabs sharing one walk-off magnitude. The pump centroid enters at
/// (z, x) = (0, 0) and drifts by walkoff_sign * tan(theta) per unit z inside each slab.
class CrystalStack {
 public:
  CrystalStack(std::string name, std::vector<CrystalSlab> slabs, double theta);

  const std::string& name() const { return name_; }
  const std::vector<CrystalSlab>& slabs() const { return slabs_; }
  double theta() const { return theta_; }
  double total_length() const { return total_length_; }

  /// Centroid at every slab boundary, entrance and exit faces included.
  std::vector<PathPoint> breakpoints() const;

  /// Same slabs with every walk-off sign reversed.
  CrystalStack mirrored() const;

 private:
  std::string name_;
  std::vector<CrystalSlab> slabs_;
  double theta_;
  double total_length_;
};

/// Transverse pump-centroid position x_c(z); z in [0, L].
double pump_centroid(const CrystalStack& stack, double z);

struct StandardStacks {
  CrystalStack single_iso;    // one slab, walk-off neglected
  CrystalStack single_aniso;  // one slab, +theta
  CrystalStack noncomp;       // two L/2 slabs, +theta, +theta
  CrystalStack comp;          // two L/2 slabs, +theta, -theta

  const CrystalStack& by_name(const std::string& name) const;
};

StandardStacks make_standard_stacks(double total_length, double theta);

inline constexpr const char* kStandardStackNames[] = {"single_iso", "single_aniso", "noncomp",
                                                      "comp"};

}  // namespace walkoff
