#include "walkoff/tpa.hpp"

#include <cmath>
#include <numbers>

namespace walkoff {

Mismatch mismatches(double theta_s, double theta_i, const PhaseMatchingSolution& pm) {
  return {pm.collinear_mismatch() + pm.k_s * versine(theta_s) + pm.k_i * versine(theta_i),
          pm.k_s * std::sin(theta_s) - pm.k_i * std::sin(theta_i)};
}

double tpa_isotropic_single(double theta_s, double theta_i, const PumpBeam& pump, double length,
                            const PhaseMatchingSolution& pm) {
  const Mismatch m = mismatches(theta_s, theta_i, pm);
  const double d = pump.fwhm();
  const double envelope = std::exp(-(d * m.d_perp) * (d * m.d_perp) / (8.0 * std::numbers::ln2));
  return envelope * sinc(0.5 * length * m.d_par);
}

namespace {

kernels::StackArgs base_args(const PumpBeam& pump, const PhaseMatchingSolution& pm, double theta) {
  const double c = std::cos(theta);
  const double sigma = pump.sigma();
  kernels::StackArgs a{};
  a.dpar0 = pm.collinear_mismatch();
  a.k_s = pm.k_s;
  a.k_i = pm.k_i;
  a.env_coeff = sigma * sigma / (2.0 * c * c);
  a.prefactor = std::sqrt(2.0 * std::numbers::pi) * sigma / c;
  return a;
}

std::complex<double> eval_point(const kernels::StackArgs& args, double theta_s, double theta_i) {
  const double ss = std::sin(theta_s), vs = versine(theta_s);
  std::complex<double> out;
  kernels::scalar::stack_row(args, {&ss, 1}, {&vs, 1}, std::sin(theta_i), versine(theta_i),
                             {&out, 1});
  return out;
}

}  // namespace

std::complex<double> tpa_slab(double theta_s, double theta_i, const PumpBeam& pump,
                              const CrystalSlab& slab, double z0, double x0,
                              const PhaseMatchingSolution& pm, double theta) {
  const kernels::SlabTerm term{slab.length, slab.walkoff_sign * std::tan(theta), z0, x0};
  kernels::StackArgs args = base_args(pump, pm, theta);
  args.slabs = {&term, 1};
  return eval_point(args, theta_s, theta_i);
}

StackKernel make_stack_kernel(const PumpBeam& pump, const CrystalStack& stack,
                              const PhaseMatchingSolution& pm) {
  StackKernel k;
  const auto pts = stack.breakpoints();
  const double t = std::tan(stack.theta());
  const auto& slabs = stack.slabs();
  k.terms.reserve(slabs.size());
  for (std::size_t j = 0; j < slabs.size(); ++j) {
    k.terms.push_back({slabs[j].length, slabs[j].walkoff_sign * t, pts[j].z, pts[j].x});
  }
  k.base = base_args(pump, pm, stack.theta());
  return k;
}

std::complex<double> tpa_stack(double theta_s, double theta_i, const PumpBeam& pump,
                               const CrystalStack& stack, const PhaseMatchingSolution& pm) {
  const StackKernel k = make_stack_kernel(pump, stack, pm);
  return eval_point(k.args(), theta_s, theta_i);
}

double tpa_amplitude_bound(const PumpBeam& pump, const CrystalStack& stack) {
  return std::sqrt(2.0 * std::numbers::pi) * pump.sigma() / std::cos(stack.theta()) *
         stack.total_length();
}

}  // namespace walkoff
