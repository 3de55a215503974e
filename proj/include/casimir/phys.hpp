// Physical constants (SI, CODATA 2018), shared parameter records, and the
// Matsubara frequency / plasma-parameter helpers used by every other part
// of the library.
//
// Unit conventions:
//   - All lengths in m, temperatures in K, energies in J.
//   - Imaginary frequencies zeta_l are stored as inverse lengths (m^-1),
//     i.e. the angular frequency divided by c, so that
//     K_i = sqrt(k_perp^2 + eps_i * zeta^2) is dimensionally consistent.
//   - The plasma sheet parameter Omega carries m^-1 as well.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace casimir {

namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double h_planck = 6.62607015e-34;       // J s, exact
inline constexpr double hbar = h_planck / (2.0 * pi);    // J s
inline constexpr double c_light = 299792458.0;           // m/s, exact
inline constexpr double k_boltzmann = 1.380649e-23;      // J/K, exact
inline constexpr double mu_0 = 1.25663706212e-6;         // N/A^2
inline constexpr double eps_0 = 1.0 / (mu_0 * c_light * c_light);  // F/m
inline constexpr double e_charge = 1.602176634e-19;      // C, exact
inline constexpr double m_electron = 9.1093837015e-31;   // kg
}  // namespace constants

// Permittivity at imaginary frequency, eps(i*zeta) with zeta in m^-1.
// Must satisfy eps >= 1 for zeta >= 0.
using EpsFn = std::function<double(double)>;

inline EpsFn eps_vacuum() {
  return [](double) { return 1.0; };
}
inline EpsFn eps_constant(double eps) {
  return [eps](double) { return eps; };
}

enum class BoundaryKind { DielectricCavities, PlasmaSheetCavities };

// Geometry + material description of an N-cavity stack.
//
// DielectricCavities: N cavity regions (eps_inner) of width `gap`, separated
// by wall regions (eps_outer) of the same width, with semi-infinite
// eps_outer half-spaces on both ends. All interfaces are bare (Omega = 0).
//
// PlasmaSheetCavities: n_cavities vacuum gaps of width `gap` bounded by
// n_cavities + 1 identical zero-thickness sheets of strength `omega`;
// every region has eps = 1.
struct StackSpec {
  BoundaryKind kind = BoundaryKind::PlasmaSheetCavities;
  int n_cavities = 1;
  double gap = 2e-9;         // m
  double omega = 0.0;        // m^-1 (plasma-sheet kind only)
  EpsFn eps_inner;           // cavity regions (dielectric kind); default vacuum
  EpsFn eps_outer;           // wall regions + outer half-spaces
  double temperature = 300.0;  // K

  double eps_inner_at(double zeta) const {
    return eps_inner ? eps_inner(zeta) : 1.0;
  }
  double eps_outer_at(double zeta) const {
    return eps_outer ? eps_outer(zeta) : 1.0;
  }
  void validate() const;  // throws std::invalid_argument
};

// One point of the (Matsubara index, transverse momentum) spectrum.
// Invariant: zeta == 0 exactly when l == 0.
struct SpectralPoint {
  int l = 0;
  double zeta = 0.0;    // m^-1
  double k_perp = 0.0;  // m^-1
};

// zeta_l = 2 pi l k_B T / (hbar c), in m^-1.
double matsubara_frequency(int l, double temperature);

// Omega = mu_0 n_2d q^2 / m  (Full) or with an extra 1/2 (Half).
// Both conventions appear in the source material; the superconductor
// module uses Half.
enum class OmegaConvention { Full, Half };
double omega_from_carriers(double n_2d, double q_star, double m_star,
                           OmegaConvention conv);

}  // namespace casimir
