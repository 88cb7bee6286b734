#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "walkoff/dispersion.hpp"
#include "walkoff/geometry.hpp"

namespace walkoff {

struct GaussLegendreRule {
  std::vector<double> nodes;  // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on the Legendre recurrence).
GaussLegendreRule gauss_legendre(int n);

enum class XIntegration { numeric, analytic };

struct QuadratureSpec {
  int z_panels = 2000;  // per slab, before refinement
  int z_order = 4;      // Gauss-Legendre points per z panel
  XIntegration x_mode = XIntegration::numeric;
  int x_nodes = 400;
  double x_halfwidth_sigma = 6.0;  // x window, in pump widths perpendicular to the path
  double tol = 1e-9;               // accepted |F_P - F_{P/2}| relative to the amplitude bound
  int max_refinements = 4;         // panel doublings after the first estimate
};

struct OracleResult {
  std::complex<double> value;
  double change = 0.0;  // |F_P - F_{P/2}| / amplitude bound at acceptance
  int z_panels = 0;     // panels per slab of the accepted estimate
};

/// Direct 2-D quadrature of the defining overlap integral
///   F = sum_slabs int dz int dx g(x, z) exp[i (dpar z - dperp x)],
/// g the Gaussian pump profile taken perpendicular to the local (tilted) path.
/// The x nodes ride with the pump centroid, so g at a node does not depend on z
/// and the x sum is formed once per slab.
class QuadratureOracle {
 public:
  QuadratureOracle(const PumpBeam& pump, const CrystalStack& stack,
                   const PhaseMatchingSolution& pm, QuadratureSpec spec = {});

  /// Throws OracleConvergenceError when max_refinements doublings do not meet tol.
  OracleResult evaluate(double theta_s, double theta_i) const;

  /// Fixed-resolution estimate without the refinement loop.
  std::complex<double> estimate(double theta_s, double theta_i, int z_panels) const;

  const QuadratureSpec& spec() const { return spec_; }

 private:
  struct SlabNodes {
    std::vector<double> z;
    std::vector<double> w;
  };
  const std::vector<SlabNodes>& z_nodes(int z_panels) const;
  std::complex<double> x_integral(double d_perp) const;

  PumpBeam pump_;
  CrystalStack stack_;
  PhaseMatchingSolution pm_;
  QuadratureSpec spec_;
  std::vector<PathPoint> entry_;
  std::vector<double> tilt_;
  std::vector<double> x_u_;   // offsets from the centroid
  std::vector<double> x_wg_;  // weight * g(u)
  double bound_;
  GaussLegendreRule z_rule_;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::vector<SlabNodes>> z_cache_;
};

OracleResult tpa_quadrature_oracle(double theta_s, double theta_i, const PumpBeam& pump,
                                   const CrystalStack& stack, const PhaseMatchingSolution& pm,
                                   const QuadratureSpec& quad = {});

}  // namespace walkoff
