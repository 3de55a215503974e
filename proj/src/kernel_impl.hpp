// Internal single-point evaluators shared by the scalar kernel, the AVX2
// kernel's fixup lanes, the randomized cross-check driver, and the tests.
// Not installed; include only from src/ and tests/.
#pragma once

#include <cstddef>

#include "casimir/coefficients.hpp"
#include "casimir/kernels.hpp"

namespace casimir::detail {

// Maximum cavity count the fixed-size recurrences support.
inline constexpr int kMaxCavities = 64;

// Excess-recurrence trust floor: below this Delta the series result is
// discarded in favor of the multiplicative per-gap recursion.
inline constexpr double kSeriesTrustFloor = 1e-5;

// Per-gap multiplicative recursion for a uniform sheet stack:
//   rho_1 = r, f_j = 1 - r q rho_j, rho_{j+1} = r + (1+r)^2 q rho_j / f_j,
//   log Delta_n = sum_{j=1}^n log f_j
// with r = -w / (2K + w) and q = exp(-2 d K). Stable for any depth.
double parratt_log_delta(double r, double q, int n_gaps);

// log Delta for each requested gap count of a uniform plasma-sheet stack
// at one (pol-resolved) spectral point. w is the polarization-resolved
// sheet weight: 2 omega K^2 / zeta^2 (TM, zeta > 0) or 2 omega (TE).
// u1 = 1 - q evaluated cancellation-free. Applies the trust-floor
// fallback per gap count.
void plasma_log_delta_multi(double K, double q, double u1, double w,
                            const int* ns, std::size_t count, double* out);

// log Delta for each requested cavity count of the alternating
// dielectric stack at one spectral point, zeta > 0 or TM statics
// (TE statics are identically zero and handled by the caller).
void dielectric_log_delta_multi(Pol pol, double eps_in, double eps_out,
                                double gap, double zeta, double k,
                                const int* ns, std::size_t count, double* out);

// Full single-point integrand logic (both polarizations, all branches);
// the scalar KernelFn and the AVX2 fixup path wrap this.
void eval_point(const IntegrandParams& p, double k, double* log_tm,
                double* log_te);

// Provided by the AVX2 translation unit (or a stub when the target does
// not compile AVX2 code); fn is non-null iff the implementation exists.
// Callers must verify CPU support before invoking fn.
KernelInfo avx2_kernel_impl();

// Multi-N variant used by the shared-sweep ratio evaluation. Plain
// log Delta values (no k weight): out[(2 j + pol) * n + i] holds
// log Delta for n_list[j] at k[i], pol 0 = TM, 1 = TE.
void eval_multi_n(const IntegrandParams& p, const double* k, std::size_t n,
                  const int* n_list, std::size_t n_count, double* out);

}  // namespace casimir::detail
