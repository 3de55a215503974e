#include "casimir/energy.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "casimir/kernels.hpp"
#include "kernel_impl.hpp"

namespace casimir {

namespace {

// components that damp within machine range always exceed this; it only
// guards components that are identically zero against endless refinement
constexpr double kIntegralAbsFloor = 1e-3;

double momentum_scale(const StackSpec& spec) {
  double s = 1.0 / spec.gap;
  if (spec.kind == BoundaryKind::PlasmaSheetCavities && spec.omega > 0.0) {
    s = std::max(s, std::sqrt(spec.omega / spec.gap));
  }
  return s;
}

struct PerL {
  std::vector<double> value;  // per component
  double err = 0.0;           // summed per-component error
  std::size_t nodes = 0;
  bool converged = true;
};

// integral over k of k log Delta, one Matsubara frequency, all components
// (pairs of TM/TE per requested cavity count)
PerL integrate_frequency(const StackSpec& spec, double zeta,
                         const std::vector<int>& n_list, KernelFn kernel,
                         const QuadratureConfig& cfg) {
  const IntegrandParams params = integrand_params(spec, zeta);
  const double s = momentum_scale(spec);
  const std::size_t ncomp = 2 * n_list.size();
  const bool single = n_list.size() == 1 && n_list[0] == spec.n_cavities;

  BatchIntegrand f = [&](const double* u, std::size_t n, double* out) {
    // map u in (0,1) to k in (0, inf): k = s u / (1 - u)
    double kbuf[15 * 4] = {};
    double jac[15 * 4] = {};
    for (std::size_t i = 0; i < n; ++i) {
      const double om = 1.0 - u[i];
      kbuf[i] = s * u[i] / om;
      jac[i] = s / (om * om);
    }
    if (single && kernel) {
      double tm[15 * 4], te[15 * 4];
      kernel(params, kbuf, n, tm, te);  // returns k log Delta
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = tm[i] * jac[i];
        out[n + i] = te[i] * jac[i];
      }
      return;
    }
    // shared multi-N path (plain log Delta values)
    std::vector<double> ld(ncomp * n);
    detail::eval_multi_n(params, kbuf, n, n_list.data(), n_list.size(),
                         ld.data());
    for (std::size_t c = 0; c < ncomp; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        out[c * n + i] = kbuf[i] * ld[c * n + i] * jac[i];
      }
    }
  };

  const QuadratureResult qr =
      integrate_gk(f, ncomp, cfg.rel_tol, cfg.max_nodes, kIntegralAbsFloor);
  PerL r;
  r.value = qr.value;
  for (double e : qr.abs_error) r.err += e;
  r.nodes = qr.evaluations;
  r.converged = qr.converged;
  return r;
}

struct SweepResult {
  std::vector<double> sums;  // per component, in integrand units
  int l_used = 0;
  std::size_t nodes = 0;
  double quad_err = 0.0;
  double tail_err = 0.0;
  bool converged = false;
  std::string failure;
};

// Matsubara sum with half-weight static term; deterministic: frequencies
// are always accumulated in index order, whatever the thread count.
SweepResult frequency_sweep(const StackSpec& spec,
                            const std::vector<int>& n_list,
                            const QuadratureConfig& cfg) {
  spec.validate();
  const KernelInfo kernel = select_kernel(cfg.kernel);
  const std::size_t ncomp = 2 * n_list.size();
  const double z1 = matsubara_frequency(1, spec.temperature);

  SweepResult out;
  out.sums.assign(ncomp, 0.0);

  const PerL stat = integrate_frequency(spec, 0.0, n_list, kernel.fn, cfg);
  if (!stat.converged) {
    out.failure = "momentum integral did not converge at the static term";
  }
  for (std::size_t c = 0; c < ncomp; ++c) out.sums[c] = 0.5 * stat.value[c];
  out.quad_err += 0.5 * stat.err;
  out.nodes += stat.nodes;

  const int threads = std::max(1, cfg.threads);
  const int block = threads > 1 ? 4 * threads : 1;
  std::vector<PerL> results(static_cast<std::size_t>(block));

  std::vector<double> prev_term(ncomp, 0.0), last_term(ncomp, 0.0);
  int consecutive_small = 0;
  int l = 0;
  bool stopped = false;

  while (!stopped && out.failure.empty() && l < cfg.l_max_cap) {
    const int l_begin = l + 1;
    const int l_end = std::min(l_begin + block - 1, cfg.l_max_cap);
    const int count = l_end - l_begin + 1;

    auto run = [&](int idx) {
      results[static_cast<std::size_t>(idx)] = integrate_frequency(
          spec, static_cast<double>(l_begin + idx) * z1, n_list, kernel.fn,
          cfg);
    };
    if (threads > 1 && count > 1) {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(threads));
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (int idx = t; idx < count; idx += threads) run(idx);
        });
      }
      for (auto& th : pool) th.join();
    } else {
      for (int idx = 0; idx < count; ++idx) run(idx);
    }

    for (int idx = 0; idx < count && !stopped; ++idx) {
      const PerL& r = results[static_cast<std::size_t>(idx)];
      l = l_begin + idx;
      out.nodes += r.nodes;
      out.quad_err += r.err;
      if (!r.converged) {
        out.failure = "momentum integral did not converge at frequency index " +
                      std::to_string(l);
        break;
      }
      double mx = 0.0;
      for (std::size_t c = 0; c < ncomp; ++c) {
        out.sums[c] += r.value[c];
        if (out.sums[c] != 0.0) {
          mx = std::max(mx, std::abs(r.value[c] / out.sums[c]));
        }
      }
      prev_term = last_term;
      last_term = r.value;
      if (mx < cfg.matsubara_rel_tail) {
        if (++consecutive_small >= 3) stopped = true;
      } else {
        consecutive_small = 0;
      }
    }
  }

  out.l_used = l;
  if (out.failure.empty() && !stopped) {
    out.failure = "frequency sum still above the tail target at index cap " +
                  std::to_string(cfg.l_max_cap);
  }

  // geometric estimate of the truncated tail from the last two terms
  for (std::size_t c = 0; c < ncomp; ++c) {
    const double a1 = std::abs(prev_term[c]);
    const double a2 = std::abs(last_term[c]);
    if (a1 > 0.0 && a2 > 0.0 && a2 < a1) {
      const double r = std::min(a2 / a1, 0.999);
      out.tail_err += a2 * r / (1.0 - r);
    } else {
      out.tail_err += a2;
    }
  }
  out.converged = out.failure.empty();
  return out;
}

double energy_prefactor(const StackSpec& spec) {
  return constants::k_boltzmann * spec.temperature / (2.0 * constants::pi);
}

}  // namespace

PerFrequencyIntegral per_l_integral(const StackSpec& spec, int l,
                                    const QuadratureConfig& cfg) {
  spec.validate();
  const KernelInfo kernel = select_kernel(cfg.kernel);
  const double zeta =
      l == 0 ? 0.0 : matsubara_frequency(l, spec.temperature);
  const PerL r = integrate_frequency(spec, zeta, {spec.n_cavities},
                                     kernel.fn, cfg);
  return {r.value[0], r.value[1], r.nodes};
}

EnergyResult casimir_energy(const StackSpec& spec,
                            const QuadratureConfig& cfg) {
  const SweepResult sweep = frequency_sweep(spec, {spec.n_cavities}, cfg);
  const double pref = energy_prefactor(spec);
  EnergyResult res;
  res.tm_part = pref * sweep.sums[0];
  res.te_part = pref * sweep.sums[1];
  res.e_per_area = res.tm_part + res.te_part;
  res.l_used = sweep.l_used;
  res.k_nodes_used = sweep.nodes;
  res.est_error = pref * (sweep.quad_err + sweep.tail_err);
  if (!sweep.converged) {
    throw NonConvergence(sweep.failure, res);
  }
  return res;
}

std::vector<RatioPoint> ratio_curve(const StackSpec& base,
                                    const std::vector<int>& n_list,
                                    const QuadratureConfig& cfg,
                                    SweepDiagnostics* diag) {
  if (n_list.empty()) {
    throw std::invalid_argument("ratio_curve: empty cavity-count list");
  }
  // one shared sweep covering every requested count plus the reference
  std::vector<int> ns = n_list;
  if (std::find(ns.begin(), ns.end(), 1) == ns.end()) {
    ns.insert(ns.begin(), 1);
  }
  StackSpec spec = base;
  spec.n_cavities = *std::max_element(ns.begin(), ns.end());
  spec.validate();

  const SweepResult sweep = frequency_sweep(spec, ns, cfg);
  const double pref = energy_prefactor(spec);
  if (diag) {
    diag->l_used = sweep.l_used;
    diag->k_nodes_used = sweep.nodes;
    diag->est_error = sweep.quad_err + sweep.tail_err;
  }
  if (!sweep.converged) {
    EnergyResult partial;
    partial.l_used = sweep.l_used;
    partial.k_nodes_used = sweep.nodes;
    throw NonConvergence(sweep.failure, partial);
  }

  double e1 = 0.0, e1_tm = 0.0;
  for (std::size_t j = 0; j < ns.size(); ++j) {
    if (ns[j] == 1) {
      // summed exactly like the per-point energies so ratio(1) == 1
      e1_tm = pref * sweep.sums[2 * j];
      e1 = e1_tm + pref * sweep.sums[2 * j + 1];
    }
  }

  std::vector<RatioPoint> out;
  for (int want : n_list) {
    for (std::size_t j = 0; j < ns.size(); ++j) {
      if (ns[j] != want) continue;
      RatioPoint pt;
      pt.n = want;
      pt.tm_part = pref * sweep.sums[2 * j];
      pt.te_part = pref * sweep.sums[2 * j + 1];
      pt.energy = pt.tm_part + pt.te_part;
      pt.ratio = pt.energy / (want * e1);
      pt.ratio_tm = pt.tm_part / (want * e1_tm);
      out.push_back(pt);
      break;
    }
  }
  return out;
}

}  // namespace casimir
