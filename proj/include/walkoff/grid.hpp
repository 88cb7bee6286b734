#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "walkoff/dispersion.hpp"
#include "walkoff/geometry.hpp"
#include "walkoff/oracle.hpp"

namespace walkoff {

/// Uniform angular axis; the same axis is used for signal and idler.
struct GridSpec {
  double theta_min = -0.02;  // rad
  double theta_max = 0.02;
  int n = 201;

  static GridSpec symmetric(double half_range, int n) { return {-half_range, half_range, n}; }

  void validate() const;
  double step() const { return (theta_max - theta_min) / (n - 1); }
  /// Nodes mirror exactly about the axis midpoint.
  std::vector<double> nodes() const;
};

enum class Engine { closed_form, oracle };

std::string engine_name(Engine e);

struct OracleStats {
  double max_change = 0.0;  // worst accepted |F_P - F_{P/2}| / amplitude bound
  int max_z_panels = 0;
};

/// values(a, b) = F(theta[a], theta[b]): rows index the signal angle, columns the idler.
struct TPAGrid {
  std::vector<double> theta;
  double step = 0.0;
  Eigen::MatrixXcd values;
  bool peak_normalized = false;
  double raw_peak = 0.0;  // max |F| before normalization
  Engine engine = Engine::closed_form;
  OracleStats oracle_stats;
  std::string stack_name;

  Eigen::Index size() const { return values.rows(); }
  Eigen::MatrixXd intensity() const;  // |F|^2
};

/// Samples the stack's TPA on grid x grid and rescales to peak |F| = 1.
/// Columns are evaluated in parallel; results do not depend on the thread count.
TPAGrid evaluate_grid(const CrystalStack& stack, const PumpBeam& pump,
                      const PhaseMatchingSolution& pm, const GridSpec& grid,
                      Engine engine = Engine::closed_form, const QuadratureSpec& quad = {});

/// Wraps an arbitrary sampled kernel (tests, synthetic inputs).
TPAGrid make_grid(const GridSpec& grid, const Eigen::MatrixXcd& values, bool normalize = true);

/// Symmetric grid of `n` points spanning 5x the widest unconditional-marginal rms width
/// among `stacks`, measured on a coarse 41x41 pre-pass.
GridSpec auto_grid(const std::vector<const CrystalStack*>& stacks, const PumpBeam& pump,
                   const PhaseMatchingSolution& pm, int n = 201);

}  // namespace walkoff
