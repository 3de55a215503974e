// Batched evaluation of the energy integrand
//   g(k) = k * [log Delta_TM(k) , log Delta_TE(k)]
// at fixed Matsubara frequency, with runtime-selected implementations:
// a scalar reference kernel and an AVX2+FMA kernel, bit-equivalence
// tested against each other.
//
// The integrand measures deviation from the fully decoupled stack, so it
// vanishes as the coupling factors exp(-2 d K) -> 0. Numerical policy:
//   - log Delta is accumulated through the excess recurrence (Delta - 1)
//     so that weak-coupling values keep full relative accuracy;
//   - the uniform plasma stack falls back to a multiplicative per-gap
//     recursion (stable for arbitrarily deep stacks) whenever the excess
//     recurrence leaves its trusted range;
//   - zeta = 0 is handled by dedicated limit branches.
#pragma once

#include <cstddef>
#include <string>

#include "casimir/phys.hpp"

namespace casimir {

// Everything the integrand needs at one Matsubara frequency. eps values
// are pre-evaluated so the hot loop never calls std::function.
struct IntegrandParams {
  BoundaryKind kind = BoundaryKind::PlasmaSheetCavities;
  int n_cavities = 1;
  double gap = 0.0;
  double omega = 0.0;     // sheet strength (plasma kind)
  double eps_in = 1.0;    // at this zeta (dielectric kind)
  double eps_out = 1.0;
  double zeta = 0.0;      // m^-1; zero selects the static branches
};

IntegrandParams integrand_params(const StackSpec& spec, double zeta);

// out_tm[i], out_te[i] = k[i] * log Delta_{TM,TE}(k[i]).
using KernelFn = void (*)(const IntegrandParams& p, const double* k,
                          std::size_t n, double* out_tm, double* out_te);

struct KernelInfo {
  KernelFn fn = nullptr;
  const char* name = "";
};

// name: "scalar", "avx2", or "auto" (avx2 when the CPU supports it).
// Throws std::invalid_argument for unknown names or an unsupported
// explicit request.
KernelInfo select_kernel(const std::string& name);

// The two implementations (avx2 is null on machines without AVX2+FMA).
KernelInfo scalar_kernel();
KernelInfo avx2_kernel();

}  // namespace casimir
