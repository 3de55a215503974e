// Superconductor transition model: presets, model files, the
// penetration-depth/sheet-strength chain against frozen values, and the
// closed-form transition energies.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "casimir/fitting.hpp"
#include "casimir/superconductor.hpp"

using namespace casimir;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("preset: named parameter sets and the default model") {
  const auto h = preset("harshman");
  CHECK(h.t_c == 92.0);
  CHECK(h.lambda_0 == 1.415e-7);
  CHECK(h.d == 3.36e-10);
  CHECK(h.delta == 5.84e-10);
  CHECK(h.omega_n_anchor == 300.505);
  CHECK(h.t_anchor == 94.0);

  const auto a = preset("archimedes");
  CHECK(a.t_c == 89.0);
  CHECK(a.lambda_0 == 1.030e-7);
  CHECK(a.d == h.d);          // geometry shared with the reference set
  CHECK(a.delta == h.delta);

  const auto f = preset("figure5");
  CHECK(f.delta == 4.25e-10);
  CHECK(f.d == 3.18e-10);
  CHECK(f.t_c == h.t_c);

  CHECK_THROWS_AS(preset("nonesuch"), std::invalid_argument);

  // a default-constructed model is the reference set
  const SuperconductorModel def;
  CHECK(def.t_c == h.t_c);
  CHECK(def.lambda_0 == h.lambda_0);
  CHECK(def.pairing_exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("load_model_file: overrides, comments, and diagnostics") {
  SUBCASE("well-formed file") {
    TempFile f("sc_model_ok.txt",
               "# sample override\n"
               "t_c = 90.5\n"
               "lambda_0 = 1.2e-7   # trailing comment\n"
               "\n"
               "pairing_exponent = 2.0\n");
    const auto m = load_model_file(f.path);
    CHECK(m.t_c == 90.5);
    CHECK(m.lambda_0 == 1.2e-7);
    CHECK(m.pairing_exponent == 2.0);
    CHECK(m.d == 3.36e-10);  // untouched fields keep their defaults
  }
  SUBCASE("unknown key is rejected with its line number") {
    TempFile f("sc_model_badkey.txt", "t_c = 90\nlambda0 = 1e-7\n");
    try {
      load_model_file(f.path);
      FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("lambda0") != std::string::npos);
    }
  }
  SUBCASE("malformed number is rejected") {
    TempFile f("sc_model_badnum.txt", "t_c = ninety\n");
    CHECK_THROWS_AS(load_model_file(f.path), std::invalid_argument);
  }
  SUBCASE("missing equals sign is rejected") {
    TempFile f("sc_model_noeq.txt", "t_c 90\n");
    CHECK_THROWS_AS(load_model_file(f.path), std::invalid_argument);
  }
  SUBCASE("missing file is rejected") {
    CHECK_THROWS_AS(load_model_file("does_not_exist_here.txt"),
                    std::invalid_argument);
  }
}

TEST_CASE("penetration depth and sheet strengths: frozen chain at 90 K") {
  const auto m = preset("harshman");
  // f(90) = 1 - (90/92)^{4/3}
  const double f90 = 1.0 - std::pow(90.0 / 92.0, 4.0 / 3.0);
  CHECK(rel(f90, 0.028879975300318154) < 1e-12);
  CHECK(rel(penetration_depth(m, 90.0), 8.326414582072192e-7) < 1e-12);
  CHECK(rel(omega_superconducting(m, 90.0), 421.1790776607475) < 1e-12);
  // the zero-temperature strength delta / (2 lambda_0^2)
  CHECK(rel(omega_superconducting(m, 0.0), 14583.775549700958) < 1e-12);
  // Omega_sc(t) = Omega_sc(0) f(t)
  CHECK(rel(omega_superconducting(m, 90.0),
            omega_superconducting(m, 0.0) * f90) < 1e-12);
}

TEST_CASE("penetration depth and sheet strengths: frozen chain, second set") {
  const auto m = preset("archimedes");
  CHECK(rel(1.0 - std::pow(87.0 / 89.0, 4.0 / 3.0), 0.029849761833209223) <
        1e-12);
  CHECK(rel(penetration_depth(m, 87.0), 5.96165430921657e-7) < 1e-12);
  CHECK(rel(omega_superconducting(m, 87.0), 821.5788910639168) < 1e-12);
  CHECK(rel(omega_superconducting(m, 0.0), 27523.80054670563) < 1e-12);
  CHECK(rel(omega_normal(m, 91.0), 290.91441489361705) < 1e-12);
}

TEST_CASE("omega_normal: anchored scaling and domain") {
  const auto m = preset("harshman");
  CHECK(omega_normal(m, 94.0) == 300.505);
  CHECK(rel(omega_normal(m, 100.0), 300.505 * 100.0 / 94.0) < 1e-15);
  CHECK_THROWS_AS(omega_normal(m, 92.0), std::domain_error);
  CHECK_THROWS_AS(omega_normal(m, 80.0), std::domain_error);
}

TEST_CASE("omega_normal_from_carriers: reproduces the anchor to ~0.3%") {
  const auto m = preset("harshman");
  const double om = omega_normal_from_carriers(m, 94.0);
  CHECK(rel(om, 300.505) < 5e-3);
  // explicit reconstruction through the carrier helper
  const double n_2d = m.n_3d_ref * m.delta * 94.0 / m.t_ref;
  CHECK(rel(om, omega_from_carriers(n_2d, m.q_star, m.m_star,
                                    OmegaConvention::Half)) < 1e-15);
  CHECK_THROWS_AS(omega_normal_from_carriers(m, 90.0), std::domain_error);
}

TEST_CASE("superfluid domain: depth and strength defined only below t_c") {
  const auto m = preset("harshman");
  CHECK_THROWS_AS(penetration_depth(m, 92.0), std::domain_error);
  CHECK_THROWS_AS(penetration_depth(m, 95.0), std::domain_error);
  CHECK_THROWS_AS(penetration_depth(m, -1.0), std::domain_error);
  CHECK_THROWS_AS(omega_superconducting(m, 92.0), std::domain_error);
}

TEST_CASE("superconducting energy weakens monotonically toward t_c") {
  const auto m = preset("harshman");
  double prev = -1.0;  // |E| at the previous (colder) temperature
  for (double t : {70.0, 80.0, 85.0, 88.0, 90.0, 91.5}) {
    const double e = closed_form_energy(1, m.d, omega_superconducting(m, t));
    CHECK(e < 0.0);
    if (prev > 0.0) CHECK(std::abs(e) < prev);
    prev = std::abs(e);
  }
}

TEST_CASE("transition_energies: frozen closed-form values") {
  SUBCASE("reference set, 90 K to 94 K") {
    const auto r = transition_energies(preset("harshman"), 90.0, 94.0);
    CHECK(rel(r.e_sc, -0.001616489193128268) < 1e-12);
    CHECK(rel(r.e_n, -0.001365416863155715) < 1e-12);
    CHECK(rel(r.delta_e, 0.00025107232997255294) < 1e-12);
    CHECK(rel(r.eta, 0.1838796170953106) < 1e-12);
  }
  SUBCASE("measured sample, 87 K to 91 K") {
    const auto r = transition_energies(preset("archimedes"), 87.0, 91.0);
    CHECK(rel(r.e_sc, -0.0022576886366284564) < 1e-12);
    CHECK(rel(r.e_n, -0.0013434516205183165) < 1e-12);
    CHECK(rel(r.delta_e, 0.00091423701611014) < 1e-12);
    CHECK(rel(r.eta, 0.6805135385205896) < 1e-12);
  }
  SUBCASE("temperatures must straddle the transition") {
    const auto m = preset("harshman");
    CHECK_THROWS_AS(transition_energies(m, 93.0, 94.0), std::domain_error);
    CHECK_THROWS_AS(transition_energies(m, 90.0, 91.0), std::domain_error);
  }
}

TEST_CASE("transition_energies_exact: full sweep tracks the closed form") {
  const auto m = preset("harshman");
  const auto closed = transition_energies(m, 90.0, 94.0);
  const auto exact = transition_energies_exact(m, 90.0, 94.0,
                                               QuadratureConfig{});
  // the closed form carries the fitted saturation amplitude; agreement
  // at the few-percent level is what it is built to deliver
  CHECK(exact.e_sc < 0.0);
  CHECK(exact.e_n < 0.0);
  CHECK(rel(exact.e_sc, closed.e_sc) < 0.15);
  CHECK(rel(exact.e_n, closed.e_n) < 0.15);
  CHECK(exact.delta_e > 0.0);
  CHECK(std::abs(exact.eta - closed.eta) < 0.05);
}
