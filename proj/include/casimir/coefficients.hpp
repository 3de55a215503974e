// Single-interface reflection/transmission coefficients on the imaginary
// frequency axis and the four per-cavity kernels (together with the
// geometric decay factor) that generate the multi-cavity interaction
// series.
//
// Conventions:
//   - zeta >= 0 is the imaginary angular frequency divided by c (m^-1),
//     k_perp >= 0 the transverse momentum (m^-1).
//   - K_i = sqrt(k_perp^2 + eps_i zeta^2) is the decay constant in medium i.
//   - An interface (i -> j) may carry a zero-thickness plasma sheet of
//     strength Omega >= 0 (m^-1); Omega = 0 is a bare dielectric step.
//   - R is the reflection from side i onto side j, S the reflection from
//     the j side, T the transmission. Swapping the sides maps R to -S and
//     leaves T unchanged. A bare step has S = R and T = 1 exactly; a
//     sheet between identical media has S = -R.
#pragma once

#include <vector>

namespace casimir {

enum class Pol { TM, TE };

struct CoefficientSet {
  Pol pol = Pol::TM;
  double K_i = 0.0;  // decay constant, incidence side
  double K_j = 0.0;  // decay constant, far side
  double R = 0.0;    // reflection, incidence side
  double S = 0.0;    // reflection, far side
  double T = 0.0;    // transmission
};

double transverse_wavevector(double eps, double zeta, double k_perp);

// Coefficients for the interface (i -> j). Handles the zeta = 0 limits
// internally:
//   TM, Omega > 0:  R = -1, S = +1, T = -1   (sheet acts as ideal mirror)
//   TM, Omega = 0:  R = (eps_j - eps_i)/(eps_j + eps_i) = S, T = 1
//   TE:             regular formulas with K = k_perp (transparent sheet
//                   in the strict zeta -> 0 limit has R -> finite value
//                   obtained by direct substitution)
CoefficientSet rst(Pol pol, double eps_i, double eps_j, double omega,
                   double zeta, double k_perp);

// Per-cavity kernels for one cavity of width d in medium j between
// interfaces (i -> j) and (j -> k):
//   E = q S_jk R_ij + 1        first-cavity seed (E - 1 = I_1)
//   F = q R_ij T_jk + R_jk     left closure
//   G = q S_jk T_ij + S_ij     right closure
//   H = S_ij R_jk + q T_ij T_jk  interior hop
// with q = exp(-2 d K_j). `decay` stores the inter-cavity factor
// exp(-2 d K_wall) used to chain consecutive cavities.
//
// `i1` stores E - 1 evaluated as the product q * S_jk * R_ij; using it
// instead of (E - 1) avoids the catastrophic cancellation of subtracting
// two near-unit numbers when q -> 1.
struct CavityKernels {
  double E = 1.0;
  double F = 0.0;
  double G = 0.0;
  double H = 0.0;
  double decay = 0.0;    // exp(-2 d K_wall), chains cavity k to cavity k+1
  double i1 = 0.0;       // E - 1, computed cancellation-free
  double s_entry = 0.0;  // S_ij, closes the primed terms
};

// ij: interface entering the cavity (wall -> cavity medium);
// jk: interface leaving it (cavity -> wall medium).
// d: cavity width. The cavity-interior decay uses ij.K_j; the chaining
// decay uses jk.K_j (the wall medium).
CavityKernels kernels(const CoefficientSet& ij, const CoefficientSet& jk,
                      double d);

// Interaction terms I_n connecting the outermost interfaces across n
// cavities, plus the half-open variants I'_n used by the even plasma
// stacks:
//   I_1 = E - 1,           I'_1 = 1
//   I_n = F w (H w)^{n-2} G,  I'_n = I_n with G replaced by S_ij
// where w = decay. Terms are returned for n = 1..n_max.
struct InteractionSeries {
  std::vector<double> terms;         // I_1 .. I_n_max
  std::vector<double> primed_terms;  // I'_1 .. I'_n_max
};

InteractionSeries interaction_series(const CavityKernels& k, int n_max);

}  // namespace casimir
