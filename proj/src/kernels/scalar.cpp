#include <cmath>

#include "walkoff/kernels.hpp"

namespace walkoff::kernels::scalar {

void stack_row(const StackArgs& args, std::span<const double> sin_s,
               std::span<const double> versin_s, double sin_i, double versin_i,
               std::span<std::complex<double>> out) {
  const std::size_t n = out.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double dpar = args.dpar0 + args.k_s * versin_s[j] + args.k_i * versin_i;
    const double dperp = args.k_s * sin_s[j] - args.k_i * sin_i;
    const double env = args.prefactor * std::exp(-args.env_coeff * dperp * dperp);
    double re = 0.0, im = 0.0;
    for (const SlabTerm& slab : args.slabs) {
      const double half_arg = 0.5 * slab.length * (dpar - slab.tilt * dperp);
      const double mag = slab.length * sinc(half_arg);
      const double phase = dpar * slab.z0 - dperp * slab.x0 + half_arg;
      re += mag * std::cos(phase);
      im += mag * std::sin(phase);
    }
    out[j] = {env * re, env * im};
  }
}

std::complex<double> phasor_sum(std::span<const double> weights, std::span<const double> nodes,
                                double slope, double offset) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double phase = slope * nodes[k] + offset;
    re += weights[k] * std::cos(phase);
    im += weights[k] * std::sin(phase);
  }
  return {re, im};
}

void abs2(std::span<const std::complex<double>> f, std::span<double> out) {
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::norm(f[k]);
}

}  // namespace walkoff::kernels::scalar
