// Constants, Matsubara frequencies, carrier-density sheet strengths, and
// stack validation.
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "casimir/phys.hpp"

using namespace casimir;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("constants: identities between the exact SI values") {
  using namespace constants;
  // mu_0 eps_0 c^2 = 1 by construction of eps_0
  CHECK(mu_0 * eps_0 * c_light * c_light == doctest::Approx(1.0).epsilon(1e-15));
  // hbar = h / 2 pi
  CHECK(rel(hbar, 1.0545718176461565e-34) < 1e-15);
  CHECK(h_planck == 6.62607015e-34);
  CHECK(k_boltzmann == 1.380649e-23);
  CHECK(c_light == 299792458.0);
  CHECK(e_charge == 1.602176634e-19);
}

TEST_CASE("matsubara_frequency: first frequency at 94 K") {
  // zeta_1 = 2 pi k_B T / (hbar c) at T = 94 K
  CHECK(rel(matsubara_frequency(1, 94.0), 257925.41656963434) < 1e-13);
  CHECK(matsubara_frequency(0, 94.0) == 0.0);
  // linear in l and in T
  CHECK(rel(matsubara_frequency(7, 94.0), 7.0 * matsubara_frequency(1, 94.0)) <
        1e-14);
  CHECK(rel(matsubara_frequency(1, 188.0), 2.0 * matsubara_frequency(1, 94.0)) <
        1e-14);
}

TEST_CASE("matsubara_frequency: rejects bad arguments") {
  CHECK_THROWS_AS(matsubara_frequency(-1, 94.0), std::invalid_argument);
  CHECK_THROWS_AS(matsubara_frequency(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(matsubara_frequency(1, -5.0), std::invalid_argument);
}

TEST_CASE("omega_from_carriers: both conventions against frozen references") {
  using namespace constants;
  // n_2d = 1e16 m^-2 with electron parameters, full convention
  const double full =
      omega_from_carriers(1e16, e_charge, m_electron, OmegaConvention::Full);
  CHECK(rel(full, 354.11282508237787) < 1e-13);
  // n_2d = 1.702e16 m^-2, half convention
  const double half = omega_from_carriers(1.702e16, e_charge, m_electron,
                                          OmegaConvention::Half);
  CHECK(rel(half, 301.35001414510356) < 1e-13);
  // half convention is exactly half the full one
  const double full_same =
      omega_from_carriers(1.702e16, e_charge, m_electron, OmegaConvention::Full);
  CHECK(rel(half, 0.5 * full_same) < 1e-15);
  // the half-convention value sits within 0.5% of the 300.505 m^-1 anchor
  CHECK(rel(half, 300.505) < 5e-3);
}

TEST_CASE("omega_from_carriers: rejects non-physical inputs") {
  using namespace constants;
  CHECK_THROWS_AS(
      omega_from_carriers(-1.0, e_charge, m_electron, OmegaConvention::Full),
      std::invalid_argument);
  CHECK_THROWS_AS(
      omega_from_carriers(1e16, e_charge, 0.0, OmegaConvention::Full),
      std::invalid_argument);
}

TEST_CASE("StackSpec::validate accepts the workhorse configurations") {
  StackSpec plasma;
  plasma.kind = BoundaryKind::PlasmaSheetCavities;
  plasma.n_cavities = 19;
  plasma.gap = 2e-9;
  plasma.omega = 49593.3;
  plasma.temperature = 94.0;
  CHECK_NOTHROW(plasma.validate());

  StackSpec diel;
  diel.kind = BoundaryKind::DielectricCavities;
  diel.n_cavities = 3;
  diel.gap = 5e-9;
  diel.eps_inner = eps_constant(1.0);
  diel.eps_outer = eps_constant(2.5);
  diel.temperature = 300.0;
  CHECK_NOTHROW(diel.validate());
}

TEST_CASE("StackSpec::validate rejects broken configurations") {
  StackSpec s;
  s.kind = BoundaryKind::PlasmaSheetCavities;
  s.n_cavities = 1;
  s.gap = 2e-9;
  s.omega = 1e4;
  s.temperature = 94.0;

  SUBCASE("zero cavities") {
    s.n_cavities = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("negative gap") {
    s.gap = -1e-9;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("zero gap") {
    s.gap = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("negative sheet strength") {
    s.omega = -1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("zero temperature") {
    s.temperature = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
  SUBCASE("dielectric kind with eps below 1") {
    s.kind = BoundaryKind::DielectricCavities;
    s.omega = 0.0;
    s.eps_inner = eps_constant(0.5);
    s.eps_outer = eps_constant(2.5);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }
}

TEST_CASE("eps helpers evaluate as constants") {
  auto v = eps_vacuum();
  auto c = eps_constant(2.5);
  CHECK(v(0.0) == 1.0);
  CHECK(v(1e7) == 1.0);
  CHECK(c(0.0) == 2.5);
  CHECK(c(1e7) == 2.5);
  // default-constructed spec falls back to vacuum on both sides
  StackSpec s;
  CHECK(s.eps_inner_at(3e5) == 1.0);
  CHECK(s.eps_outer_at(3e5) == 1.0);
}
