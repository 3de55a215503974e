#include "casimir/boundary_matrix.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace casimir {

void LayerStack::validate() const {
  const std::size_t j = omega.size();
  if (j < 1) throw std::invalid_argument("stack needs at least one interface");
  if (eps.size() != j + 1 || d.size() != j - 1) {
    throw std::invalid_argument(
        "stack needs eps per region and a thickness per inner region");
  }
  for (double e : eps) {
    if (!(e >= 1.0) || !std::isfinite(e)) {
      throw std::invalid_argument("region permittivities must be >= 1");
    }
  }
  for (double t : d) {
    if (!(t > 0.0)) throw std::invalid_argument("thicknesses must be > 0");
  }
  for (double o : omega) {
    if (o < 0.0 || !std::isfinite(o)) {
      throw std::invalid_argument("sheet strengths must be >= 0");
    }
  }
}

LayerStack layer_stack(const StackSpec& spec, double zeta) {
  spec.validate();
  LayerStack st;
  if (spec.kind == BoundaryKind::PlasmaSheetCavities) {
    const int gaps = spec.n_cavities;
    st.eps.assign(static_cast<std::size_t>(gaps) + 2, 1.0);
    st.d.assign(static_cast<std::size_t>(gaps), spec.gap);
    st.omega.assign(static_cast<std::size_t>(gaps) + 1, spec.omega);
    return st;
  }
  const double ei = spec.eps_inner_at(zeta);
  const double eo = spec.eps_outer_at(zeta);
  st.eps.push_back(eo);
  for (int n = 0; n < spec.n_cavities; ++n) {
    st.eps.push_back(ei);
    st.d.push_back(spec.gap);
    if (n + 1 < spec.n_cavities) {
      st.eps.push_back(eo);
      st.d.push_back(spec.gap);
    }
  }
  st.eps.push_back(eo);
  st.omega.assign(st.eps.size() - 1, 0.0);
  return st;
}

BoundaryMatrix build_matrix(const LayerStack& stack, Pol pol, double zeta,
                            double k_perp) {
  stack.validate();
  if (zeta < 0.0 || k_perp < 0.0) {
    throw std::invalid_argument("build_matrix: zeta, k_perp must be >= 0");
  }
  const int j_ifaces = stack.interfaces();
  const int dim = 2 * j_ifaces;

  std::vector<double> kdec(stack.eps.size());
  for (std::size_t m = 0; m < stack.eps.size(); ++m) {
    kdec[m] = transverse_wavevector(stack.eps[m], zeta, k_perp);
  }
  // thickness factor of inner region m (1..J-1): exp(-K_m d_m)
  std::vector<double> tf(stack.eps.size(), 0.0);
  double scale_log = 0.0;
  for (int m = 1; m <= j_ifaces - 1; ++m) {
    const double kd = kdec[static_cast<std::size_t>(m)] *
                      stack.d[static_cast<std::size_t>(m - 1)];
    tf[static_cast<std::size_t>(m)] = std::exp(-kd);
    scale_log += kd;
  }

  BoundaryMatrix bm;
  bm.dim = dim;
  bm.scale_log = scale_log;
  bm.coupled = Eigen::MatrixXd::Zero(dim, dim);
  bm.decoupled = Eigen::MatrixXd::Zero(dim, dim);

  // column indices per region: region 0 -> b only (col 0); inner region m
  // -> a at 2m-1, b at 2m; region J -> a only (col 2J-1)
  const auto col_a = [&](int m) { return m == 0 ? -1 : (m == j_ifaces ? 2 * j_ifaces - 1 : 2 * m - 1); };
  const auto col_b = [&](int m) { return m == 0 ? 0 : (m == j_ifaces ? -1 : 2 * m); };

  const bool tm_static = (pol == Pol::TM && zeta == 0.0);

  for (int i = 0; i < j_ifaces; ++i) {
    const int rv = 2 * i;      // value condition
    const int rd = 2 * i + 1;  // derivative condition
    const int l = i, r = i + 1;
    const double kl = kdec[static_cast<std::size_t>(l)];
    const double kr = kdec[static_cast<std::size_t>(r)];
    const double dl = (l >= 1) ? tf[static_cast<std::size_t>(l)] : 0.0;
    const double dr = (r <= j_ifaces - 1) ? tf[static_cast<std::size_t>(r)] : 0.0;
    const double om = stack.omega[static_cast<std::size_t>(i)];

    struct Entry {
      int row, col;
      double v;
      int tag;  // 0 plain, 1 scaled by dl, 2 scaled by dr
    };
    std::vector<Entry> entries;

    if (pol == Pol::TE) {
      // field continuous; derivative jumps by 2 omega * field
      entries = {{rv, col_a(r), 1.0, 0},
                 {rv, col_b(r), 1.0, 2},
                 {rv, col_a(l), -1.0, 1},
                 {rv, col_b(l), -1.0, 0},
                 {rd, col_a(r), -kr - 2.0 * om, 0},
                 {rd, col_b(r), kr - 2.0 * om, 2},
                 {rd, col_a(l), kl, 1},
                 {rd, col_b(l), -kl, 0}};
    } else if (tm_static && om > 0.0) {
      // static sheet limit: the jump term dominates the value condition,
      // which collapses to a vanishing derivative on the right side
      entries = {{rv, col_a(r), -kr, 0},
                 {rv, col_b(r), kr, 2},
                 {rd, col_a(r), -kr, 0},
                 {rd, col_b(r), kr, 2},
                 {rd, col_a(l), kl, 1},
                 {rd, col_b(l), -kl, 0}};
    } else {
      // eps-weighted field jumps by (2 omega / zeta^2) * derivative;
      // derivative continuous
      const double el = stack.eps[static_cast<std::size_t>(l)];
      const double er = stack.eps[static_cast<std::size_t>(r)];
      const double g = (om > 0.0) ? 2.0 * om / (zeta * zeta) : 0.0;
      entries = {{rv, col_a(r), er + g * kr, 0},
                 {rv, col_b(r), er - g * kr, 2},
                 {rv, col_a(l), -el, 1},
                 {rv, col_b(l), -el, 0},
                 {rd, col_a(r), -kr, 0},
                 {rd, col_b(r), kr, 2},
                 {rd, col_a(l), kl, 1},
                 {rd, col_b(l), -kl, 0}};
    }

    for (const auto& e : entries) {
      if (e.col < 0) continue;
      if (e.tag == 1) {
        bm.coupled(e.row, e.col) = e.v * dl;
      } else if (e.tag == 2) {
        bm.coupled(e.row, e.col) = e.v * dr;
      } else {
        bm.coupled(e.row, e.col) = e.v;
        bm.decoupled(e.row, e.col) = e.v;
      }
    }
  }
  return bm;
}

BoundaryMatrix build_matrix(const StackSpec& spec, Pol pol,
                            const SpectralPoint& pt) {
  return build_matrix(layer_stack(spec, pt.zeta), pol, pt.zeta, pt.k_perp);
}

namespace {

struct SignLog {
  double sign = 0.0;
  double log_abs = 0.0;
};

SignLog det_sign_log(const Eigen::MatrixXd& m) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const auto& u = lu.matrixLU();
  SignLog out;
  out.sign = lu.permutationP().determinant();  // +1 or -1
  out.log_abs = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double piv = u(i, i);
    if (piv == 0.0) {
      out.sign = 0.0;
      out.log_abs = -std::numeric_limits<double>::infinity();
      return out;
    }
    if (piv < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(piv));
  }
  return out;
}

DeltaValue ratio_of_dets(Eigen::MatrixXd coupled, Eigen::MatrixXd decoupled) {
  // row equilibration from the coupled matrix, applied to both so the
  // scaling cancels in the ratio
  for (Eigen::Index i = 0; i < coupled.rows(); ++i) {
    double s = coupled.row(i).cwiseAbs().maxCoeff();
    if (s == 0.0) s = 1.0;
    coupled.row(i) /= s;
    decoupled.row(i) /= s;
  }
  const SignLog num = det_sign_log(coupled);
  const SignLog den = det_sign_log(decoupled);
  if (den.sign == 0.0) {
    throw std::runtime_error("decoupled boundary determinant vanished");
  }
  DeltaValue v;
  v.log_value = num.log_abs - den.log_abs;
  v.value = num.sign * den.sign * std::exp(v.log_value);
  return v;
}

}  // namespace

DeltaValue regularized_delta(const LayerStack& stack, Pol pol, double zeta,
                             double k_perp) {
  const BoundaryMatrix bm = build_matrix(stack, pol, zeta, k_perp);
  return ratio_of_dets(bm.coupled, bm.decoupled);
}

DeltaValue regularized_delta(const StackSpec& spec, Pol pol,
                             const SpectralPoint& pt, int n_cavities) {
  spec.validate();
  if (n_cavities < 1 || n_cavities > spec.n_cavities) {
    throw std::invalid_argument(
        "regularized_delta: n_cavities out of range for this stack");
  }
  const BoundaryMatrix bm = build_matrix(spec, pol, pt);
  // leading block covering interfaces 0 .. m-1 with region m treated as
  // semi-infinite: the sub-stack with the requested cavity/gap count
  const int m = (spec.kind == BoundaryKind::DielectricCavities)
                    ? 2 * n_cavities
                    : n_cavities + 1;
  const int dim = 2 * m;
  return ratio_of_dets(bm.coupled.topLeftCorner(dim, dim),
                       bm.decoupled.topLeftCorner(dim, dim));
}

}  // namespace casimir
