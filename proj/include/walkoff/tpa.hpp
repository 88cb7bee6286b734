#pragma once

#include <complex>
#include <vector>

#include "walkoff/dispersion.hpp"
#include "walkoff/geometry.hpp"
#include "walkoff/kernels.hpp"

namespace walkoff {

// Conventions shared by the closed form and the quadrature oracle:
//  - z runs from the entrance face (0) to the exit face (L); the pump centroid
//    enters at x = 0.
//  - signal and idler scatter to opposite sides of the pump axis, so the
//    integrand phase is exp[i (dpar z - dperp x)].
//  - no global phase is removed; only |F| and quantities derived from |F|^2
//    are reported.

struct Mismatch {
  double d_par = 0.0;   // longitudinal, rad/m
  double d_perp = 0.0;  // transverse, rad/m
};

/// dpar = k_p - k_s cos(theta_s) - k_i cos(theta_i), dperp = k_s sin(theta_s) - k_i sin(theta_i).
/// Evaluated as (k_p - k_s - k_i) + k_s (1 - cos) + k_i (1 - cos) to avoid cancellation.
Mismatch mismatches(double theta_s, double theta_i, const PhaseMatchingSolution& pm);

/// Effective longitudinal mismatch of a slab with walk-off sign `sign`.
inline double xi(const Mismatch& m, int sign, double theta) {
  return m.d_par - sign * m.d_perp * std::tan(theta);
}

/// 1 - cos(x) without cancellation near 0.
inline double versine(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

using kernels::sinc;

/// exp[-(d dperp)^2 / (8 ln 2)] sinc(L dpar / 2); real, peak 1 at phase matching.
double tpa_isotropic_single(double theta_s, double theta_i, const PumpBeam& pump, double length,
                            const PhaseMatchingSolution& pm);

/// Exact integral of the tilted-Gaussian source over one slab [z0, z0 + l], with
/// the pump centroid entering the slab at (z0, x0):
///   F = sqrt(2 pi) sigma / cos(theta) * exp[-sigma^2 dperp^2 / (2 cos^2 theta)]
///       * l sinc(l xi / 2) * exp[i (dpar z0 - dperp x0 + l xi / 2)].
std::complex<double> tpa_slab(double theta_s, double theta_i, const PumpBeam& pump,
                              const CrystalSlab& slab, double z0, double x0,
                              const PhaseMatchingSolution& pm, double theta);

/// Coherent sum of tpa_slab over the stack, entry points chained along the pump path.
std::complex<double> tpa_stack(double theta_s, double theta_i, const PumpBeam& pump,
                               const CrystalStack& stack, const PhaseMatchingSolution& pm);

/// Precomputed kernel inputs for one stack.
struct StackKernel {
  std::vector<kernels::SlabTerm> terms;
  kernels::StackArgs base;  // slabs left empty

  /// The returned view borrows `terms`.
  kernels::StackArgs args() const {
    kernels::StackArgs a = base;
    a.slabs = terms;
    return a;
  }
};
StackKernel make_stack_kernel(const PumpBeam& pump, const CrystalStack& stack,
                              const PhaseMatchingSolution& pm);

/// Upper bound on |F| for the stack (all slabs phase-matched and in phase).
double tpa_amplitude_bound(const PumpBeam& pump, const CrystalStack& stack);

}  // namespace walkoff
