#include "casimir/oracle_check.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "casimir/boundary_matrix.hpp"
#include "kernel_impl.hpp"

namespace casimir {

namespace {

// uniform in [0,1) built directly from the engine's bits so the draw
// sequence does not depend on the standard library's distribution
double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, lo_exp + (hi_exp - lo_exp) * u01(rng));
}

}  // namespace

CrossCheckResult cross_check_random(const CrossCheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  CrossCheckResult out;
  const bool plasma = cfg.kind == BoundaryKind::PlasmaSheetCavities;

  const long max_points = 50L * cfg.target_points + 1000;
  while (out.points_admissible < cfg.target_points &&
         out.points_drawn < max_points) {
    ++out.points_drawn;

    StackSpec spec;
    spec.kind = cfg.kind;
    spec.temperature = 94.0;  // bookkeeping only; zeta is drawn directly
    spec.gap = log_uniform(rng, -9.3, -7.5);
    if (plasma) {
      spec.n_cavities = 1 + static_cast<int>(u01(rng) * 8.0);
      if (spec.n_cavities > 8) spec.n_cavities = 8;
      spec.omega = log_uniform(rng, 3.0, 6.0);
    } else {
      spec.n_cavities = 1 + static_cast<int>(u01(rng) * 5.0);
      if (spec.n_cavities > 5) spec.n_cavities = 5;
      const double eo = 1.0 + 4.0 * u01(rng);
      const double ei = 1.0 + 4.0 * u01(rng);
      spec.eps_outer = eps_constant(eo);
      spec.eps_inner = eps_constant(ei);
    }

    SpectralPoint pt;
    const bool static_mode =
        static_cast<int>(u01(rng) * 8.0) < cfg.static_eighths;
    pt.zeta = static_mode ? 0.0 : log_uniform(rng, 4.0, 9.0);
    pt.k_perp = log_uniform(rng, 4.0, 9.0);
    pt.l = static_mode ? 0 : 1;

    // production values: one multi-depth evaluation, log Delta per depth
    std::vector<int> depths;
    for (int n = 1; n <= spec.n_cavities; ++n) depths.push_back(n);
    const IntegrandParams params = integrand_params(spec, pt.zeta);
    std::vector<double> log_prod(2 * depths.size());
    detail::eval_multi_n(params, &pt.k_perp, 1, depths.data(), depths.size(),
                         log_prod.data());

    bool any = false;
    for (std::size_t j = 0; j < depths.size(); ++j) {
      for (int p = 0; p < 2; ++p) {
        const Pol pol = p == 0 ? Pol::TM : Pol::TE;
        const DeltaValue oracle =
            regularized_delta(spec, pol, pt, depths[j]);
        if (!(std::abs(oracle.value) > cfg.admissible_floor)) continue;
        const double prod = std::exp(log_prod[2 * j + static_cast<std::size_t>(p)]);
        const double rel =
            std::abs(prod - oracle.value) / std::abs(oracle.value);
        any = true;
        ++out.comparisons;
        if (rel > out.worst_rel) {
          out.worst_rel = rel;
          char buf[256];
          std::snprintf(buf, sizeof(buf),
                        "%s %s n=%d zeta=%.6e k=%.6e d=%.6e omega=%.6e "
                        "delta=%.6e rel=%.3e",
                        plasma ? "plasma" : "dielectric",
                        p == 0 ? "TM" : "TE", depths[j], pt.zeta, pt.k_perp,
                        spec.gap, spec.omega, oracle.value, rel);
          out.worst_case = buf;
        }
      }
    }
    if (any) ++out.points_admissible;
  }
  return out;
}

}  // namespace casimir
