#include <atomic>
#include <cstdlib>
#include <string>

#include "walkoff/errors.hpp"
#include "walkoff/kernels.hpp"

namespace walkoff::kernels {

namespace {

bool cpu_has_avx2() {
#if WALKOFF_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("WALKOFF_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2" && avx2) return Backend::avx2;
  }
  return avx2 ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

bool backend_supported(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw DomainError(std::string("SIMD backend not supported here: ") +
                      std::string(backend_name(b)));
  }
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void stack_row(const StackArgs& args, std::span<const double> sin_s,
               std::span<const double> versin_s, double sin_i, double versin_i,
               std::span<std::complex<double>> out) {
#if WALKOFF_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    return avx2::stack_row(args, sin_s, versin_s, sin_i, versin_i, out);
  }
#endif
  scalar::stack_row(args, sin_s, versin_s, sin_i, versin_i, out);
}

std::complex<double> phasor_sum(std::span<const double> weights, std::span<const double> nodes,
                                double slope, double offset) {
#if WALKOFF_HAVE_AVX2
  if (active_backend() == Backend::avx2) return avx2::phasor_sum(weights, nodes, slope, offset);
#endif
  return scalar::phasor_sum(weights, nodes, slope, offset);
}

void abs2(std::span<const std::complex<double>> f, std::span<double> out) {
#if WALKOFF_HAVE_AVX2
  if (active_backend() == Backend::avx2) return avx2::abs2(f, out);
#endif
  scalar::abs2(f, out);
}

}  // namespace walkoff::kernels
