#include "casimir/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir {

double transverse_wavevector(double eps, double zeta, double k_perp) {
  return std::sqrt(k_perp * k_perp + eps * zeta * zeta);
}

CoefficientSet rst(Pol pol, double eps_i, double eps_j, double omega,
                   double zeta, double k_perp) {
  if (zeta < 0.0 || k_perp < 0.0 || omega < 0.0) {
    throw std::invalid_argument("rst: zeta, k_perp, omega must be >= 0");
  }
  CoefficientSet c;
  c.pol = pol;
  c.K_i = transverse_wavevector(eps_i, zeta, k_perp);
  c.K_j = transverse_wavevector(eps_j, zeta, k_perp);

  if (pol == Pol::TE) {
    const double den = c.K_i + c.K_j + 2.0 * omega;
    c.R = (c.K_i - c.K_j + 2.0 * omega) / den;
    c.S = (c.K_i - c.K_j - 2.0 * omega) / den;
    c.T = (c.K_i + c.K_j - 2.0 * omega) / den;
    return c;
  }

  if (zeta == 0.0) {
    // static limit: the sheet term 2 omega K_i K_j / zeta^2 dominates
    // every other scale when omega > 0, otherwise it is absent
    if (omega > 0.0) {
      c.R = -1.0;
      c.S = 1.0;
      c.T = -1.0;
    } else {
      c.R = (eps_j - eps_i) / (eps_j + eps_i);
      c.S = c.R;
      c.T = 1.0;
    }
    return c;
  }

  const double w = 2.0 * (omega / (zeta * zeta)) * c.K_i * c.K_j;
  const double den = eps_j * c.K_i + eps_i * c.K_j + w;
  c.R = (eps_j * c.K_i - eps_i * c.K_j - w) / den;
  c.S = (eps_j * c.K_i - eps_i * c.K_j + w) / den;
  c.T = (eps_j * c.K_i + eps_i * c.K_j - w) / den;
  return c;
}

CavityKernels kernels(const CoefficientSet& ij, const CoefficientSet& jk,
                      double d) {
  if (!(d > 0.0)) {
    throw std::invalid_argument("kernels: cavity width must be positive");
  }
  CavityKernels kn;
  const double q = std::exp(-2.0 * d * ij.K_j);  // across the cavity medium
  kn.i1 = q * jk.S * ij.R;
  kn.E = kn.i1 + 1.0;
  kn.F = q * ij.R * jk.T + jk.R;
  kn.G = q * jk.S * ij.T + ij.S;
  kn.H = ij.S * jk.R + q * ij.T * jk.T;
  kn.decay = std::exp(-2.0 * d * jk.K_j);  // across the far (wall) medium
  kn.s_entry = ij.S;
  return kn;
}

InteractionSeries interaction_series(const CavityKernels& k, int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("interaction_series: n_max must be >= 1");
  }
  InteractionSeries s;
  s.terms.reserve(n_max);
  s.primed_terms.reserve(n_max);
  s.terms.push_back(k.E);
  s.primed_terms.push_back(1.0);
  // I_n = F w (H w)^{n-2} G with w = decay; the primed variant closes
  // with the bare entry-side reflection instead of G
  double chain = k.F * k.decay;
  for (int n = 2; n <= n_max; ++n) {
    s.terms.push_back(chain * k.G);
    s.primed_terms.push_back(chain * k.s_entry);
    chain *= k.H * k.decay;
  }
  return s;
}

}  // namespace casimir
