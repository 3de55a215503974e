#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/kernels.hpp"
#include "kernel_impl.hpp"

namespace casimir {

IntegrandParams integrand_params(const StackSpec& spec, double zeta) {
  spec.validate();
  if (spec.n_cavities > detail::kMaxCavities) {
    throw std::invalid_argument("n_cavities exceeds the supported maximum");
  }
  IntegrandParams p;
  p.kind = spec.kind;
  p.n_cavities = spec.n_cavities;
  p.gap = spec.gap;
  p.omega = spec.omega;
  p.eps_in = spec.eps_inner_at(zeta);
  p.eps_out = spec.eps_outer_at(zeta);
  p.zeta = zeta;
  return p;
}

namespace detail {

double parratt_log_delta(double r, double q, int n_gaps) {
  const double t = 1.0 + r;
  double rho = r;
  double acc = 0.0;
  for (int j = 0; j < n_gaps; ++j) {
    const double f = 1.0 - r * q * rho;
    acc += std::log(f);
    rho = r + t * t * q * rho / f;
  }
  return acc;
}

namespace {

struct PlasmaAlgebra {
  double e1 = 0.0;     // I_1 - 1 as a product
  double one_qt = 0.0; // 1 + q T, assembled cancellation-free
  double hq = 0.0;     // H q, the per-cavity chain ratio
  double r = 0.0;      // -|R|, seed of the multiplicative recursion
};

inline PlasmaAlgebra plasma_algebra(double K, double q, double u1, double w) {
  PlasmaAlgebra a;
  const double den = 2.0 * K + w;
  const double mag = w / den;  // |R|
  const double t = (2.0 * K - w) / den;
  a.e1 = -q * mag * mag;
  a.one_qt = (2.0 * K * (1.0 + q) + w * u1) / den;
  a.hq = q * (q * t * t - mag * mag);
  a.r = -mag;
  return a;
}

// harvest log Delta at every requested gap count from one recursion pass
inline void parratt_multi(double r, double q, const int* ns, std::size_t count,
                          double* out) {
  int n_max = 0;
  for (std::size_t j = 0; j < count; ++j) n_max = std::max(n_max, ns[j]);
  const double t = 1.0 + r;
  double rho = r;
  double acc = 0.0;
  for (int j = 1; j <= n_max; ++j) {
    const double f = 1.0 - r * q * rho;
    acc += std::log(f);
    rho = r + t * t * q * rho / f;
    for (std::size_t i = 0; i < count; ++i) {
      if (ns[i] == j) out[i] = acc;
    }
  }
}

}  // namespace

void plasma_log_delta_multi(double K, double q, double u1, double w,
                            const int* ns, std::size_t count, double* out) {
  const PlasmaAlgebra a = plasma_algebra(K, q, u1, w);

  int depth = 0;  // recurrence depth: ceil(n/2) cavities, +1 for even closure
  for (std::size_t j = 0; j < count; ++j) {
    depth = std::max(depth, ns[j] % 2 ? (ns[j] + 1) / 2 : ns[j] / 2 + 1);
  }

  double full_i[kMaxCavities / 2 + 2];    // I_k (full), k = 1..depth
  double primed_i[kMaxCavities / 2 + 2];  // I'_k, k = 2..depth
  full_i[1] = 1.0 + a.e1;
  double chain = a.e1 * a.one_qt;  // primed chain, I'_2 seed
  for (int k = 2; k <= depth; ++k) {
    primed_i[k] = chain;
    full_i[k] = chain * a.one_qt;
    chain *= a.hq;
  }

  double d[kMaxCavities / 2 + 2];  // excess Delta_m - 1
  d[0] = 0.0;
  for (int m = 1; m <= depth; ++m) {
    double s = a.e1 + full_i[1] * d[m - 1];
    for (int k = 2; k <= m; ++k) s += full_i[k] * (1.0 + d[m - k]);
    d[m] = s;
  }

  bool need_fallback = false;
  for (std::size_t j = 0; j < count; ++j) {
    const int n = ns[j];
    double excess;
    if (n % 2 == 1) {
      excess = d[(n + 1) / 2];
    } else {
      const int m = n / 2;
      double s = d[m];
      for (int k = 2; k <= m + 1; ++k) {
        s += primed_i[k] * (1.0 + d[m + 1 - k]);
      }
      excess = s;
    }
    if (excess > -1.0 + kSeriesTrustFloor && std::isfinite(excess)) {
      out[j] = std::log1p(excess);
    } else {
      out[j] = std::numeric_limits<double>::quiet_NaN();
      need_fallback = true;
    }
  }
  if (need_fallback) {
    double fixed[kMaxCavities] = {};
    parratt_multi(a.r, q, ns, count, fixed);
    for (std::size_t j = 0; j < count; ++j) {
      if (std::isnan(out[j])) out[j] = fixed[j];
    }
  }
}

void dielectric_log_delta_multi(Pol pol, double eps_in, double eps_out,
                                double gap, double zeta, double k,
                                const int* ns, std::size_t count,
                                double* out) {
  const CoefficientSet in = rst(pol, eps_out, eps_in, 0.0, zeta, k);
  const CoefficientSet back = rst(pol, eps_in, eps_out, 0.0, zeta, k);
  const double q1 = std::exp(-2.0 * gap * in.K_j);    // across the cavity
  const double q2 = std::exp(-2.0 * gap * back.K_j);  // across the wall

  const double e1 = q1 * back.S * in.R;
  const double i1_full = 1.0 + e1;
  const double f = q1 * in.R * back.T + back.R;
  const double g = q1 * back.S * in.T + in.S;
  const double hq = (in.S * back.R + q1 * in.T * back.T) * q2;

  int depth = 0;
  for (std::size_t j = 0; j < count; ++j) depth = std::max(depth, ns[j]);

  double full_i[kMaxCavities + 1];
  full_i[1] = i1_full;
  double chain = f * q2 * g;
  for (int n = 2; n <= depth; ++n) {
    full_i[n] = chain;
    chain *= hq;
  }

  double d[kMaxCavities + 1];
  d[0] = 0.0;
  for (int m = 1; m <= depth; ++m) {
    double s = e1 + full_i[1] * d[m - 1];
    for (int kk = 2; kk <= m; ++kk) s += full_i[kk] * (1.0 + d[m - kk]);
    d[m] = s;
  }
  for (std::size_t j = 0; j < count; ++j) {
    out[j] = std::log1p(d[ns[j]]);
  }
}

void eval_multi_n(const IntegrandParams& p, const double* k, std::size_t n,
                  const int* n_list, std::size_t n_count, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double kp = k[i];
    double ltm[kMaxCavities], lte[kMaxCavities];

    if (p.kind == BoundaryKind::PlasmaSheetCavities) {
      const double K = std::hypot(kp, p.zeta);
      const double x = 2.0 * p.gap * K;
      const double u1 = -std::expm1(-x);
      const double q = std::exp(-x);
      if (p.zeta == 0.0) {
        // TM: every sheet reflects perfectly in the static limit; pick the
        // formulation that keeps full relative precision on each side
        const double lg =
            p.omega > 0.0 ? (q < 0.5 ? std::log1p(-q) : std::log(u1)) : 0.0;
        for (std::size_t j = 0; j < n_count; ++j) ltm[j] = n_list[j] * lg;
        if (p.omega > 0.0) {
          // TE coefficients depend on zeta only through K, so the static
          // limit reuses the regular cancellation-free evaluation
          plasma_log_delta_multi(K, q, u1, 2.0 * p.omega, n_list, n_count,
                                 lte);
        } else {
          for (std::size_t j = 0; j < n_count; ++j) lte[j] = 0.0;
        }
      } else if (p.omega > 0.0) {
        const double w_tm = 2.0 * p.omega * K * K / (p.zeta * p.zeta);
        plasma_log_delta_multi(K, q, u1, w_tm, n_list, n_count, ltm);
        plasma_log_delta_multi(K, q, u1, 2.0 * p.omega, n_list, n_count, lte);
      } else {
        for (std::size_t j = 0; j < n_count; ++j) ltm[j] = lte[j] = 0.0;
      }
    } else {
      dielectric_log_delta_multi(Pol::TM, p.eps_in, p.eps_out, p.gap, p.zeta,
                                 kp, n_list, n_count, ltm);
      if (p.zeta == 0.0) {
        // static TE sees no dielectric contrast
        for (std::size_t j = 0; j < n_count; ++j) lte[j] = 0.0;
      } else {
        dielectric_log_delta_multi(Pol::TE, p.eps_in, p.eps_out, p.gap,
                                   p.zeta, kp, n_list, n_count, lte);
      }
    }

    for (std::size_t j = 0; j < n_count; ++j) {
      out[(2 * j) * n + i] = ltm[j];
      out[(2 * j + 1) * n + i] = lte[j];
    }
  }
}

void eval_point(const IntegrandParams& p, double k, double* log_tm,
                double* log_te) {
  double buf[2];
  const int nn = p.n_cavities;
  eval_multi_n(p, &k, 1, &nn, 1, buf);
  *log_tm = buf[0];
  *log_te = buf[1];
}

}  // namespace detail

namespace {

void scalar_kernel_fn(const IntegrandParams& p, const double* k,
                      std::size_t n, double* out_tm, double* out_te) {
  const int nn = p.n_cavities;
  for (std::size_t i = 0; i < n; ++i) {
    double buf[2];
    detail::eval_multi_n(p, k + i, 1, &nn, 1, buf);
    out_tm[i] = k[i] * buf[0];
    out_te[i] = k[i] * buf[1];
  }
}

}  // namespace

KernelInfo scalar_kernel() { return {&scalar_kernel_fn, "scalar"}; }

KernelInfo avx2_kernel() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return detail::avx2_kernel_impl();
  }
#endif
  return {nullptr, "avx2"};
}

KernelInfo select_kernel(const std::string& name) {
  if (name == "scalar") return scalar_kernel();
  if (name == "avx2") {
    const KernelInfo k = avx2_kernel();
    if (!k.fn) {
      throw std::invalid_argument("avx2 kernel not available on this CPU");
    }
    return k;
  }
  if (name == "auto") {
    const KernelInfo k = avx2_kernel();
    return k.fn ? k : scalar_kernel();
  }
  throw std::invalid_argument("unknown kernel: " + name);
}

}  // namespace casimir
