// AVX2 + FMA variants of the kernels in kernels.hpp. Compiled with -mavx2 -mfma
// and only reached through the runtime dispatcher after a CPUID check.

#include <immintrin.h>

#include <cmath>

#include "walkoff/kernels.hpp"

namespace walkoff::kernels::avx2 {

namespace {

// Cephes-style exp: x = n ln2 + r, |r| <= ln2/2, rational approximation for e^r.
inline __m256d exp_pd(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.0);
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_fmadd_pd(_mm256_set1_pd(1.26177193074810590878E-4), rr,
                              _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_fmadd_pd(_mm256_set1_pd(3.00198505138664455042E-6), rr,
                              _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

  // 2^n through the exponent field; n is in [-1022, 1023] after clamping.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_add_epi64(_mm256_cvtepi32_epi64(n32), _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(underflow, e);
}

// Cody-Waite reduction by pi/2, then the Cephes minimax polynomials on [-pi/4, pi/4].
// Accurate to a couple of ulp for |x| < 1e7; callers fall back to libm above that.
inline void sincos_pd(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(0.63661977236758134308)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(1.57079625129699707031), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(7.54978941586159635335E-8), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(5.39030285815811905290E-15), r);
  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_fmadd_pd(_mm256_set1_pd(1.58962301576546568060E-10), z,
                               _mm256_set1_pd(-2.50507477628578072866E-8));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(2.75573136213857245213E-6));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.98412698295895385996E-4));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(8.33333333332211858878E-3));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.66666666666666307295E-1));
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(ps, z), r, r);

  __m256d pc = _mm256_fmadd_pd(_mm256_set1_pd(-1.13585365213876817300E-11), z,
                               _mm256_set1_pd(2.08757008419747316778E-9));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-2.75573141792967388112E-7));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(2.48015872888517045348E-5));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.38888888888730564116E-3));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(4.16666666666665929218E-2));
  const __m256d zz = _mm256_mul_pd(z, z);
  const __m256d cos_r =
      _mm256_fmadd_pd(zz, pc, _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

  const __m256i quadrant = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(quadrant, one), one));
  const __m256d neg_s =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(quadrant, two), two));
  const __m256d neg_c = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(quadrant, one), two), two));
  const __m256d sign_bit = _mm256_set1_pd(-0.0);

  const __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
  const __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
  *s_out = _mm256_xor_pd(s, _mm256_and_pd(neg_s, sign_bit));
  *c_out = _mm256_xor_pd(c, _mm256_and_pd(neg_c, sign_bit));
}

inline bool all_small(__m256d x, double bound) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  return _mm256_movemask_pd(_mm256_cmp_pd(ax, _mm256_set1_pd(bound), _CMP_LT_OQ)) == 0xF;
}

constexpr double kReductionLimit = 1e7;

}  // namespace

void stack_row(const StackArgs& args, std::span<const double> sin_s,
               std::span<const double> versin_s, double sin_i, double versin_i,
               std::span<std::complex<double>> out) {
  const std::size_t n = out.size();
  const __m256d k_s = _mm256_set1_pd(args.k_s);
  const __m256d dpar_base = _mm256_set1_pd(args.dpar0 + args.k_i * versin_i);
  const __m256d dperp_base = _mm256_set1_pd(-args.k_i * sin_i);
  const __m256d neg_env = _mm256_set1_pd(-args.env_coeff);
  const __m256d pref = _mm256_set1_pd(args.prefactor);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d tiny = _mm256_set1_pd(1e-6);
  const __m256d abs_mask = _mm256_set1_pd(-0.0);

  alignas(32) double re_buf[4];
  alignas(32) double im_buf[4];

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d vs = _mm256_loadu_pd(versin_s.data() + j);
    const __m256d ss = _mm256_loadu_pd(sin_s.data() + j);
    const __m256d dpar = _mm256_fmadd_pd(k_s, vs, dpar_base);
    const __m256d dperp = _mm256_fmadd_pd(k_s, ss, dperp_base);
    const __m256d env = _mm256_mul_pd(pref, exp_pd(_mm256_mul_pd(neg_env, _mm256_mul_pd(dperp, dperp))));

    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    bool fallback = false;
    for (const SlabTerm& slab : args.slabs) {
      const __m256d len = _mm256_set1_pd(slab.length);
      const __m256d xi = _mm256_fnmadd_pd(_mm256_set1_pd(slab.tilt), dperp, dpar);
      const __m256d half_arg = _mm256_mul_pd(_mm256_mul_pd(half, len), xi);
      __m256d phase = _mm256_mul_pd(dpar, _mm256_set1_pd(slab.z0));
      phase = _mm256_fnmadd_pd(dperp, _mm256_set1_pd(slab.x0), phase);
      phase = _mm256_add_pd(phase, half_arg);
      if (!all_small(phase, kReductionLimit) || !all_small(half_arg, kReductionLimit)) {
        fallback = true;
        break;
      }
      __m256d sa, ca, sp, cp;
      sincos_pd(half_arg, &sa, &ca);
      sincos_pd(phase, &sp, &cp);
      const __m256d small =
          _mm256_cmp_pd(_mm256_andnot_pd(abs_mask, half_arg), tiny, _CMP_LT_OQ);
      const __m256d series =
          _mm256_fnmadd_pd(_mm256_mul_pd(half_arg, half_arg), _mm256_set1_pd(1.0 / 6.0),
                           _mm256_set1_pd(1.0));
      // the division result in small lanes is discarded by the blend
      const __m256d safe_arg = _mm256_blendv_pd(half_arg, _mm256_set1_pd(1.0), small);
      const __m256d sinc = _mm256_blendv_pd(_mm256_div_pd(sa, safe_arg), series, small);
      const __m256d mag = _mm256_mul_pd(len, sinc);
      re = _mm256_fmadd_pd(mag, cp, re);
      im = _mm256_fmadd_pd(mag, sp, im);
    }
    if (fallback) {
      scalar::stack_row(args, sin_s.subspan(j, 4), versin_s.subspan(j, 4), sin_i, versin_i,
                        out.subspan(j, 4));
      continue;
    }
    _mm256_store_pd(re_buf, _mm256_mul_pd(env, re));
    _mm256_store_pd(im_buf, _mm256_mul_pd(env, im));
    for (int l = 0; l < 4; ++l) out[j + l] = {re_buf[l], im_buf[l]};
  }
  if (j < n) {
    scalar::stack_row(args, sin_s.subspan(j), versin_s.subspan(j), sin_i, versin_i,
                      out.subspan(j));
  }
}

std::complex<double> phasor_sum(std::span<const double> weights, std::span<const double> nodes,
                                double slope, double offset) {
  const std::size_t n = weights.size();
  const __m256d vslope = _mm256_set1_pd(slope);
  const __m256d voffset = _mm256_set1_pd(offset);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  double re_tail = 0.0, im_tail = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d w = _mm256_loadu_pd(weights.data() + k);
    const __m256d phase = _mm256_fmadd_pd(vslope, _mm256_loadu_pd(nodes.data() + k), voffset);
    if (!all_small(phase, kReductionLimit)) {
      const auto part = scalar::phasor_sum(weights.subspan(k, 4), nodes.subspan(k, 4), slope, offset);
      re_tail += part.real();
      im_tail += part.imag();
      continue;
    }
    __m256d s, c;
    sincos_pd(phase, &s, &c);
    re = _mm256_fmadd_pd(w, c, re);
    im = _mm256_fmadd_pd(w, s, im);
  }
  if (k < n) {
    const auto part = scalar::phasor_sum(weights.subspan(k), nodes.subspan(k), slope, offset);
    re_tail += part.real();
    im_tail += part.imag();
  }
  alignas(32) double r[4];
  alignas(32) double i[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(i, im);
  return {((r[0] + r[1]) + (r[2] + r[3])) + re_tail, ((i[0] + i[1]) + (i[2] + i[3])) + im_tail};
}

void abs2(std::span<const std::complex<double>> f, std::span<double> out) {
  const std::size_t n = f.size();
  const double* src = reinterpret_cast<const double*>(f.data());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    // a = [re0 im0 re1 im1], b = [re2 im2 re3 im3]
    const __m256d a = _mm256_loadu_pd(src + 2 * k);
    const __m256d b = _mm256_loadu_pd(src + 2 * k + 4);
    const __m256d sq_a = _mm256_mul_pd(a, a);
    const __m256d sq_b = _mm256_mul_pd(b, b);
    // hadd gives [a0+a1, b0+b1, a2+a3, b2+b3] -> permute to [k, k+1, k+2, k+3]
    const __m256d sums = _mm256_hadd_pd(sq_a, sq_b);
    _mm256_storeu_pd(out.data() + k, _mm256_permute4x64_pd(sums, 0b11011000));
  }
  for (; k < n; ++k) out[k] = std::norm(f[k]);
}

}  // namespace walkoff::kernels::avx2
