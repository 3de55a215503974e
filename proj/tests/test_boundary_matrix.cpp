// Boundary-matrix determinant reference: stack geometry, argument
// validation, sub-stack minors, and agreement with the production
// series/recurrence evaluation.
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "casimir/assembly.hpp"
#include "casimir/boundary_matrix.hpp"
#include "casimir/coefficients.hpp"
#include "casimir/oracle_check.hpp"
#include "casimir/phys.hpp"

using namespace casimir;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

StackSpec plasma_spec(int gaps, double d, double omega) {
  StackSpec s;
  s.kind = BoundaryKind::PlasmaSheetCavities;
  s.n_cavities = gaps;
  s.gap = d;
  s.omega = omega;
  s.temperature = 94.0;
  return s;
}

StackSpec dielectric_spec(int n, double d, double eps_in, double eps_out) {
  StackSpec s;
  s.kind = BoundaryKind::DielectricCavities;
  s.n_cavities = n;
  s.gap = d;
  s.eps_inner = eps_constant(eps_in);
  s.eps_outer = eps_constant(eps_out);
  s.temperature = 94.0;
  return s;
}

}  // namespace

TEST_CASE("layer_stack: region/interface bookkeeping") {
  SUBCASE("plasma gaps") {
    const auto st = layer_stack(plasma_spec(4, 2e-9, 5e4), 2.6e5);
    CHECK(st.eps.size() == 6);
    CHECK(st.d.size() == 4);
    CHECK(st.omega.size() == 5);
    CHECK(st.interfaces() == 5);
    for (double e : st.eps) CHECK(e == 1.0);
    for (double o : st.omega) CHECK(o == 5e4);
    for (double t : st.d) CHECK(t == 2e-9);
  }
  SUBCASE("dielectric cavities with interleaved walls") {
    const auto st = layer_stack(dielectric_spec(3, 5e-9, 1.0, 2.5), 2.6e5);
    CHECK(st.eps.size() == 7);   // outer|inner|...|outer
    CHECK(st.d.size() == 5);     // 2n-1 finite regions
    CHECK(st.omega.size() == 6); // 2n bare interfaces
    CHECK(st.eps.front() == 2.5);
    CHECK(st.eps[1] == 1.0);
    CHECK(st.eps[2] == 2.5);
    CHECK(st.eps.back() == 2.5);
    for (double o : st.omega) CHECK(o == 0.0);
  }
}

TEST_CASE("LayerStack::validate: shape and value errors") {
  LayerStack st;
  st.eps = {1.0, 1.0};
  st.d = {};
  st.omega = {5e4};
  CHECK_NOTHROW(st.validate());

  SUBCASE("no interfaces") {
    st.omega.clear();
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  }
  SUBCASE("eps per region mismatch") {
    st.eps = {1.0};
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  }
  SUBCASE("eps below vacuum") {
    st.eps = {1.0, 0.5};
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  }
  SUBCASE("nonpositive thickness") {
    st.eps = {1.0, 1.0, 1.0};
    st.d = {0.0};
    st.omega = {5e4, 5e4};
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  }
  SUBCASE("negative sheet strength") {
    st.omega = {-1.0};
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  }
}

TEST_CASE("build_matrix: dimensions and argument checks") {
  const auto spec = plasma_spec(3, 2e-9, 5e4);
  SpectralPoint pt{1, 2.6e5, 1e5};
  const auto bm = build_matrix(spec, Pol::TM, pt);
  CHECK(bm.dim == 2 * 4);  // two coefficients per region boundary pair
  CHECK(bm.coupled.rows() == bm.dim);
  CHECK(bm.decoupled.rows() == bm.dim);
  CHECK(bm.scale_log > 0.0);

  const auto st = layer_stack(spec, pt.zeta);
  CHECK_THROWS_AS(build_matrix(st, Pol::TM, -1.0, 1e5), std::invalid_argument);
  CHECK_THROWS_AS(build_matrix(st, Pol::TM, 2.6e5, -1e5),
                  std::invalid_argument);
}

TEST_CASE("regularized_delta: sub-stack minor equals the directly built stack") {
  SpectralPoint pt{1, 2.6e5, 5e8 / 2.0};
  for (Pol pol : {Pol::TM, Pol::TE}) {
    const auto big_diel = dielectric_spec(5, 2e-9, 1.0, 3.0);
    for (int n = 1; n <= 5; ++n) {
      const auto minor = regularized_delta(big_diel, pol, pt, n);
      const auto direct =
          regularized_delta(dielectric_spec(n, 2e-9, 1.0, 3.0), pol, pt, n);
      CHECK(rel(minor.value, direct.value) < 1e-12);
    }
    const auto big_pl = plasma_spec(6, 2e-9, 5e4);
    for (int n = 1; n <= 6; ++n) {
      const auto minor = regularized_delta(big_pl, pol, pt, n);
      const auto direct =
          regularized_delta(plasma_spec(n, 2e-9, 5e4), pol, pt, n);
      CHECK(rel(minor.value, direct.value) < 1e-12);
    }
  }
  const auto big = plasma_spec(3, 2e-9, 5e4);
  CHECK_THROWS_AS(regularized_delta(big, Pol::TM, pt, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(regularized_delta(big, Pol::TM, pt, 0),
                  std::invalid_argument);
}

TEST_CASE("regularized_delta: trivial stacks give Delta = 1") {
  SpectralPoint pt{1, 2.6e5, 1e5};
  SUBCASE("plasma sheets of zero strength") {
    const auto v = regularized_delta(plasma_spec(4, 2e-9, 0.0), Pol::TM, pt, 4);
    CHECK(std::abs(v.log_value) < 1e-12);
  }
  SUBCASE("dielectric stack with no contrast") {
    const auto v =
        regularized_delta(dielectric_spec(3, 2e-9, 2.0, 2.0), Pol::TE, pt, 3);
    CHECK(std::abs(v.log_value) < 1e-12);
  }
}

TEST_CASE("determinant ratio matches the production series at spot points") {
  const double d = 2e-9, omega = 49593.3;
  const double zeta = 257925.41656963434;

  SUBCASE("plasma stacks, finite frequency") {
    for (double k : {2e5, 5e8}) {
      SpectralPoint pt{1, zeta, k};
      for (Pol pol : {Pol::TM, Pol::TE}) {
        const auto iface = rst(pol, 1.0, 1.0, omega, zeta, k);
        const auto kern = kernels(iface, iface, d);
        for (int gaps = 1; gaps <= 6; ++gaps) {
          const auto prod = delta_plasma(kern, gaps);
          const auto ref =
              regularized_delta(plasma_spec(gaps, d, omega), pol, pt, gaps);
          CHECK(rel(std::exp(prod.log_value), std::abs(ref.value)) < 1e-11);
        }
      }
    }
  }

  SUBCASE("plasma stacks, static point") {
    SpectralPoint pt{0, 0.0, 3e8};
    for (Pol pol : {Pol::TM, Pol::TE}) {
      const auto iface = rst(pol, 1.0, 1.0, omega, 0.0, pt.k_perp);
      const auto kern = kernels(iface, iface, d);
      for (int gaps = 1; gaps <= 4; ++gaps) {
        const auto prod = delta_plasma(kern, gaps);
        const auto ref =
            regularized_delta(plasma_spec(gaps, d, omega), pol, pt, gaps);
        CHECK(rel(std::exp(prod.log_value), std::abs(ref.value)) < 1e-10);
      }
    }
  }

  SUBCASE("dielectric stacks, finite and static points") {
    for (int l : {0, 1}) {
      SpectralPoint pt{l, l == 0 ? 0.0 : zeta, 4e8};
      for (Pol pol : {Pol::TM, Pol::TE}) {
        const auto ij = rst(pol, 3.0, 1.0, 0.0, pt.zeta, pt.k_perp);
        const auto jk = rst(pol, 1.0, 3.0, 0.0, pt.zeta, pt.k_perp);
        const auto kern = kernels(ij, jk, d);
        for (int n = 1; n <= 5; ++n) {
          const auto prod = delta_dielectric(kern, n);
          const auto ref =
              regularized_delta(dielectric_spec(n, d, 1.0, 3.0), pol, pt, n);
          CHECK(rel(std::exp(prod.log_value), std::abs(ref.value)) < 1e-11);
        }
      }
    }
  }
}

TEST_CASE("randomized cross-check: quick deterministic run per kind") {
  for (BoundaryKind kind :
       {BoundaryKind::DielectricCavities, BoundaryKind::PlasmaSheetCavities}) {
    CrossCheckConfig cfg;
    cfg.kind = kind;
    cfg.target_points = 120;
    cfg.seed = 424242u;
    const auto res = cross_check_random(cfg);
    CHECK(res.points_admissible >= cfg.target_points);
    CHECK(res.comparisons >= res.points_admissible);
    CHECK(res.worst_rel < 1e-10);
    CHECK(!res.worst_case.empty());
  }
}
