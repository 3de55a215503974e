// AVX2+FMA implementation of the batched integrand. Mirrors the scalar
// kernel's algebra four abscissae at a time; lanes that need the
// cancellation-protected scalar branches (small 2 d K, trust-floor
// fallback, statics) are recomputed through the scalar single-point
// evaluator so the two kernels never disagree beyond elementary-function
// rounding.
//
// This translation unit is compiled with -mavx2 -mfma; nothing here runs
// unless the dispatcher verified CPU support at runtime.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "casimir/kernels.hpp"
#include "kernel_impl.hpp"

namespace casimir {

namespace {

// ---- vector elementary functions (Cephes rational approximations) ----

inline __m256d v_set(double v) { return _mm256_set1_pd(v); }

// exp(x) for x in [-708, 0]; callers clamp.
inline __m256d v_exp(__m256d x) {
  x = _mm256_max_pd(x, v_set(-708.0));
  const __m256d n = _mm256_floor_pd(
      _mm256_fmadd_pd(x, v_set(1.4426950408889634073599), v_set(0.5)));
  // x - n ln 2, split for accuracy
  x = _mm256_fnmadd_pd(n, v_set(6.93145751953125e-1), x);
  x = _mm256_fnmadd_pd(n, v_set(1.42860682030941723212e-6), x);
  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = v_set(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, xx, v_set(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, xx, v_set(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = v_set(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, xx, v_set(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, xx, v_set(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, xx, v_set(2.0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(v_set(2.0), e, v_set(1.0));
  // scale by 2^n through the exponent field
  const __m256i ni = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  const __m256i pow2 = _mm256_slli_epi64(
      _mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));
}

// log(x) for normal positive x.
inline __m256d v_log(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  // exponent as signed small integer, mantissa rescaled to [0.5, 1)
  const __m256i expfield = _mm256_srli_epi64(bits, 52);
  const __m256i ei = _mm256_sub_epi64(expfield, _mm256_set1_epi64x(1022));
  // int64 -> double for |v| < 2^51 via the shifted-mantissa trick
  // 0x4338... is the bit pattern of 1.5 * 2^52; adding the integer into
  // its mantissa and subtracting that same value recovers ei as a double
  const __m256i magic = _mm256_set1_epi64x(0x4338000000000000LL);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_add_epi64(ei, magic)),
      v_set(6755399441055744.0));
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FE0000000000000LL)));
  // m < sqrt(1/2): halve the exponent step instead
  const __m256d low = _mm256_cmp_pd(m, v_set(0.70710678118654752440),
                                    _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(low, v_set(1.0)));
  m = _mm256_add_pd(m, _mm256_and_pd(low, m));
  m = _mm256_sub_pd(m, v_set(1.0));

  __m256d p = v_set(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, m, v_set(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, m, v_set(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, m, v_set(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, m, v_set(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, m, v_set(7.70838733755885391666e0));
  __m256d q = _mm256_add_pd(m, v_set(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, m, v_set(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, m, v_set(8.29875266912776603211e1));
  q = _mm256_fmadd_pd(q, m, v_set(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, m, v_set(2.31251620126765340583e1));

  const __m256d z = _mm256_mul_pd(m, m);
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(m, z), _mm256_div_pd(p, q));
  y = _mm256_fnmadd_pd(v_set(0.5), z, y);
  __m256d r = _mm256_add_pd(m, y);
  r = _mm256_fmadd_pd(e, v_set(-2.121944400546905827679e-4), r);
  r = _mm256_fmadd_pd(e, v_set(0.693359375), r);
  return r;
}

// log(1 + x) for 1 + x well above zero (callers guarantee x > -1 + 1e-5).
inline __m256d v_log1p(__m256d x) {
  const __m256d one = v_set(1.0);
  const __m256d u = _mm256_add_pd(one, x);
  // correction (x - (u - 1)) / u recovers the low bits lost in 1 + x
  const __m256d corr =
      _mm256_div_pd(_mm256_sub_pd(x, _mm256_sub_pd(u, one)), u);
  return _mm256_add_pd(v_log(u), corr);
}

// ---- vectorized stack algebra ----

constexpr int kDepthMax = detail::kMaxCavities / 2 + 2;

struct LaneMask {
  __m256d fix;  // lanes that must be recomputed by the scalar path
};

// excess Delta - 1 for a uniform plasma stack, one polarization,
// 4 lanes at once; flags lanes outside the series' trusted range
inline __m256d plasma_excess_v(__m256d K, __m256d q, __m256d u1, __m256d w,
                               int n_gaps, LaneMask* mask) {
  const __m256d two_k = _mm256_add_pd(K, K);
  const __m256d den = _mm256_add_pd(two_k, w);
  const __m256d mag = _mm256_div_pd(w, den);
  const __m256d t = _mm256_div_pd(_mm256_sub_pd(two_k, w), den);
  const __m256d r2 = _mm256_mul_pd(mag, mag);
  const __m256d e1 =
      _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(q, r2));
  // 1 + qT = (2K (1+q) + w u1) / den
  const __m256d one_qt = _mm256_div_pd(
      _mm256_fmadd_pd(two_k, _mm256_add_pd(v_set(1.0), q),
                      _mm256_mul_pd(w, u1)),
      den);
  const __m256d hq =
      _mm256_mul_pd(q, _mm256_fmsub_pd(_mm256_mul_pd(q, t), t, r2));

  const bool odd = (n_gaps % 2) != 0;
  const int depth = odd ? (n_gaps + 1) / 2 : n_gaps / 2 + 1;

  __m256d full_i[kDepthMax], primed_i[kDepthMax], d[kDepthMax];
  full_i[1] = _mm256_add_pd(v_set(1.0), e1);
  __m256d chain = _mm256_mul_pd(e1, one_qt);
  for (int k = 2; k <= depth; ++k) {
    primed_i[k] = chain;
    full_i[k] = _mm256_mul_pd(chain, one_qt);
    chain = _mm256_mul_pd(chain, hq);
  }
  d[0] = _mm256_setzero_pd();
  for (int m = 1; m <= depth; ++m) {
    __m256d s = _mm256_fmadd_pd(full_i[1], d[m - 1], e1);
    for (int k = 2; k <= m; ++k) {
      s = _mm256_fmadd_pd(full_i[k], _mm256_add_pd(v_set(1.0), d[m - k]), s);
    }
    d[m] = s;
  }

  __m256d excess;
  if (odd) {
    excess = d[(n_gaps + 1) / 2];
  } else {
    const int m = n_gaps / 2;
    __m256d s = d[m];
    for (int k = 2; k <= m + 1; ++k) {
      s = _mm256_fmadd_pd(primed_i[k], _mm256_add_pd(v_set(1.0), d[m + 1 - k]),
                          s);
    }
    excess = s;
  }
  // trusted iff excess > -1 + floor (NaN compares false -> flagged)
  const __m256d ok = _mm256_cmp_pd(
      excess, v_set(-1.0 + detail::kSeriesTrustFloor), _CMP_GT_OQ);
  mask->fix = _mm256_or_pd(mask->fix, _mm256_xor_pd(ok, _mm256_castsi256_pd(
                                          _mm256_set1_epi64x(-1))));
  return excess;
}

// excess Delta - 1 for the alternating dielectric stack, one polarization
inline __m256d dielectric_excess_v(Pol pol, __m256d k, double eps_in,
                                   double eps_out, double gap, double zeta,
                                   int n, LaneMask* mask) {
  const __m256d z2 = v_set(zeta * zeta);
  const __m256d k2 = _mm256_mul_pd(k, k);
  const __m256d k_in =
      _mm256_sqrt_pd(_mm256_fmadd_pd(v_set(eps_in), z2, k2));
  const __m256d k_out =
      _mm256_sqrt_pd(_mm256_fmadd_pd(v_set(eps_out), z2, k2));
  // reflection entering a cavity; the reverse interface is its negative
  __m256d num, den;
  if (pol == Pol::TM) {
    num = _mm256_fmsub_pd(v_set(eps_in), k_out,
                          _mm256_mul_pd(v_set(eps_out), k_in));
    den = _mm256_fmadd_pd(v_set(eps_in), k_out,
                          _mm256_mul_pd(v_set(eps_out), k_in));
  } else {
    num = _mm256_sub_pd(k_out, k_in);
    den = _mm256_add_pd(k_out, k_in);
  }
  const __m256d rho = _mm256_div_pd(num, den);
  const __m256d q1 =
      v_exp(_mm256_mul_pd(v_set(-2.0 * gap), k_in));
  const __m256d q2 =
      v_exp(_mm256_mul_pd(v_set(-2.0 * gap), k_out));

  const __m256d rho2 = _mm256_mul_pd(rho, rho);
  const __m256d e1 =
      _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(q1, rho2));
  const __m256d u1 = _mm256_sub_pd(v_set(1.0), q1);
  // I_2 = -rho^2 u1^2 q2, chain ratio H q2 = (q1 - rho^2) q2
  const __m256d i2 = _mm256_sub_pd(
      _mm256_setzero_pd(),
      _mm256_mul_pd(_mm256_mul_pd(rho2, _mm256_mul_pd(u1, u1)), q2));
  const __m256d hq = _mm256_mul_pd(_mm256_sub_pd(q1, rho2), q2);

  __m256d full_i[detail::kMaxCavities + 1], d[detail::kMaxCavities + 1];
  full_i[1] = _mm256_add_pd(v_set(1.0), e1);
  __m256d chain = i2;
  for (int kk = 2; kk <= n; ++kk) {
    full_i[kk] = chain;
    chain = _mm256_mul_pd(chain, hq);
  }
  d[0] = _mm256_setzero_pd();
  for (int m = 1; m <= n; ++m) {
    __m256d s = _mm256_fmadd_pd(full_i[1], d[m - 1], e1);
    for (int kk = 2; kk <= m; ++kk) {
      s = _mm256_fmadd_pd(full_i[kk], _mm256_add_pd(v_set(1.0), d[m - kk]),
                          s);
    }
    d[m] = s;
  }
  const __m256d excess = d[n];
  const __m256d ok = _mm256_cmp_pd(
      excess, v_set(-1.0 + detail::kSeriesTrustFloor), _CMP_GT_OQ);
  mask->fix = _mm256_or_pd(mask->fix, _mm256_xor_pd(ok, _mm256_castsi256_pd(
                                          _mm256_set1_epi64x(-1))));
  return excess;
}

void avx2_kernel_fn(const IntegrandParams& p, const double* k, std::size_t n,
                    double* out_tm, double* out_te) {
  // statics use the scalar branch structure wholesale
  if (p.zeta == 0.0 ||
      (p.kind == BoundaryKind::PlasmaSheetCavities && p.omega <= 0.0)) {
    const int nn = p.n_cavities;
    for (std::size_t i = 0; i < n; ++i) {
      double buf[2];
      detail::eval_multi_n(p, k + i, 1, &nn, 1, buf);
      out_tm[i] = k[i] * buf[0];
      out_te[i] = k[i] * buf[1];
    }
    return;
  }

  const std::size_t n4 = n / 4 * 4;
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const __m256d vk = _mm256_loadu_pd(k + i);
    LaneMask mask{_mm256_setzero_pd()};
    __m256d ltm, lte;

    if (p.kind == BoundaryKind::PlasmaSheetCavities) {
      const __m256d K = _mm256_sqrt_pd(
          _mm256_fmadd_pd(vk, vk, v_set(p.zeta * p.zeta)));
      const __m256d x2 = _mm256_mul_pd(v_set(2.0 * p.gap), K);
      // small arguments need expm1; defer those lanes to the scalar path
      mask.fix = _mm256_cmp_pd(x2, v_set(0.25), _CMP_LT_OQ);
      const __m256d q = v_exp(_mm256_sub_pd(_mm256_setzero_pd(), x2));
      const __m256d u1 = _mm256_sub_pd(v_set(1.0), q);
      const __m256d w_tm = _mm256_mul_pd(
          v_set(2.0 * p.omega / (p.zeta * p.zeta)), _mm256_mul_pd(K, K));
      const __m256d w_te = v_set(2.0 * p.omega);
      const __m256d ex_tm =
          plasma_excess_v(K, q, u1, w_tm, p.n_cavities, &mask);
      const __m256d ex_te =
          plasma_excess_v(K, q, u1, w_te, p.n_cavities, &mask);
      ltm = v_log1p(ex_tm);
      lte = v_log1p(ex_te);
    } else {
      const __m256d ex_tm = dielectric_excess_v(
          Pol::TM, vk, p.eps_in, p.eps_out, p.gap, p.zeta, p.n_cavities,
          &mask);
      const __m256d ex_te = dielectric_excess_v(
          Pol::TE, vk, p.eps_in, p.eps_out, p.gap, p.zeta, p.n_cavities,
          &mask);
      ltm = v_log1p(ex_tm);
      lte = v_log1p(ex_te);
    }

    _mm256_storeu_pd(out_tm + i, _mm256_mul_pd(vk, ltm));
    _mm256_storeu_pd(out_te + i, _mm256_mul_pd(vk, lte));

    const int bad = _mm256_movemask_pd(mask.fix);
    if (bad) {
      for (int lane = 0; lane < 4; ++lane) {
        if (bad & (1 << lane)) {
          double tm_v, te_v;
          detail::eval_point(p, k[i + lane], &tm_v, &te_v);
          out_tm[i + lane] = k[i + lane] * tm_v;
          out_te[i + lane] = k[i + lane] * te_v;
        }
      }
    }
  }
  for (; i < n; ++i) {
    double tm_v, te_v;
    detail::eval_point(p, k[i], &tm_v, &te_v);
    out_tm[i] = k[i] * tm_v;
    out_te[i] = k[i] * te_v;
  }
}

}  // namespace

namespace detail {

// Called only by the dispatcher (which performs the CPU feature check in
// a translation unit compiled without -mavx2).
KernelInfo avx2_kernel_impl() { return {&avx2_kernel_fn, "avx2"}; }

}  // namespace detail

}  // namespace casimir
