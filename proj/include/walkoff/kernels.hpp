#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and an
// AVX2+FMA version; the active backend is chosen once at startup from CPUID and
// can be overridden with WALKOFF_SIMD=scalar|avx2 or set_backend().

#include <cmath>
#include <complex>
#include <span>
#include <string_view>

namespace walkoff::kernels {

enum class Backend { scalar, avx2 };

bool backend_supported(Backend b);
Backend active_backend();
/// Throws DomainError when `b` is not supported on this CPU/build.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

/// One slab of a crystal stack, as seen by the closed-form TPA kernel.
struct SlabTerm {
  double length;  // m
  double tilt;    // walkoff_sign * tan(theta)
  double z0;      // pump-centroid entry point (m)
  double x0;
};

/// Per-stack constants of the closed-form TPA.
///   F = prefactor * exp(-env_coeff * dperp^2)
///       * sum_j l_j sinc(l_j xi_j / 2) exp(i (dpar z0_j - dperp x0_j + l_j xi_j / 2)),
///   xi_j = dpar - tilt_j * dperp,
///   dpar = dpar0 + k_s (1 - cos theta_s) + k_i (1 - cos theta_i),
///   dperp = k_s sin theta_s - k_i sin theta_i.
struct StackArgs {
  double dpar0;
  double k_s;
  double k_i;
  double env_coeff;
  double prefactor;
  std::span<const SlabTerm> slabs;
};

/// Fills out[j] = F(theta_s[j], theta_i) given sin and versine (1 - cos) of the
/// signal angles and of the single idler angle.
void stack_row(const StackArgs& args, std::span<const double> sin_s,
               std::span<const double> versin_s, double sin_i, double versin_i,
               std::span<std::complex<double>> out);

/// sum_k w_k exp(i (slope * x_k + offset))
std::complex<double> phasor_sum(std::span<const double> weights, std::span<const double> nodes,
                                double slope, double offset);

/// out[k] = |f[k]|^2
void abs2(std::span<const std::complex<double>> f, std::span<double> out);

namespace scalar {
void stack_row(const StackArgs& args, std::span<const double> sin_s,
               std::span<const double> versin_s, double sin_i, double versin_i,
               std::span<std::complex<double>> out);
std::complex<double> phasor_sum(std::span<const double> weights, std::span<const double> nodes,
                                double slope, double offset);
void abs2(std::span<const std::complex<double>> f, std::span<double> out);
}  // namespace scalar

#if WALKOFF_HAVE_AVX2
namespace avx2 {
void stack_row(const StackArgs& args, std::span<const double> sin_s,
               std::span<const double> versin_s, double sin_i, double versin_i,
               std::span<std::complex<double>> out);
std::complex<double> phasor_sum(std::span<const double> weights, std::span<const double> nodes,
                                double slope, double offset);
void abs2(std::span<const std::complex<double>> f, std::span<double> out);
}  // namespace avx2
#endif

/// sin(x)/x with sinc(0) = 1; series branch below |x| = 1e-6.
inline double sinc(double x) {
  if (x < 1e-6 && x > -1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace walkoff::kernels
