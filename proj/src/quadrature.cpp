#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace casimir {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (positive
// abscissae; the rule is symmetric).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b;
  std::vector<double> kronrod;  // per component
  std::vector<double> err;      // per component
};

void fill_nodes(double a, double b, double* x) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  for (int i = 0; i < 7; ++i) {
    x[2 * i] = c - h * kXgk[i];
    x[2 * i + 1] = c + h * kXgk[i];
  }
  x[14] = c;
}

// Evaluate one panel: Kronrod and Gauss sums per component, error from
// the QUADPACK (200 |K - G|)^{3/2} heuristic capped by the raw
// difference scale.
Panel eval_panel(const BatchIntegrand& f, std::size_t nc, double a, double b) {
  double x[15];
  fill_nodes(a, b, x);
  std::vector<double> vals(nc * 15);
  f(x, 15, vals.data());
  Panel p;
  p.a = a;
  p.b = b;
  p.kronrod.assign(nc, 0.0);
  p.err.assign(nc, 0.0);
  const double h = 0.5 * (b - a);
  for (std::size_t c = 0; c < nc; ++c) {
    const double* v = vals.data() + c * 15;
    double kron = kWgk[7] * v[14];
    double gauss = 0.0;
    for (int i = 0; i < 7; ++i) {
      const double pairsum = v[2 * i] + v[2 * i + 1];
      kron += kWgk[i] * pairsum;
      if (i % 2 == 1) gauss += kWg[i / 2] * pairsum;  // i = 1, 3, 5
    }
    gauss += kWg[3] * v[14];
    // deviation from the mean value, for the error heuristic
    const double mean = kron * 0.5;
    double resasc = kWgk[7] * std::abs(v[14] - mean);
    for (int i = 0; i < 7; ++i) {
      resasc += kWgk[i] *
                (std::abs(v[2 * i] - mean) + std::abs(v[2 * i + 1] - mean));
    }
    p.kronrod[c] = kron * h;
    const double diff = std::abs(kron - gauss) * h;
    const double scale = resasc * h;
    double e = diff;
    if (scale > 0.0 && diff > 0.0) {
      const double r = std::pow(200.0 * diff / scale, 1.5);
      if (r < 1.0) e = scale * r;
    }
    p.err[c] = e;
  }
  return p;
}

}  // namespace

void gk15_nodes(double a, double b, double* x15) { fill_nodes(a, b, x15); }

QuadratureResult integrate_gk(const BatchIntegrand& f, std::size_t n_components,
                              double rel_tol, std::size_t max_evaluations,
                              double abs_floor) {
  if (n_components == 0) throw std::invalid_argument("no components");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");

  QuadratureResult res;
  res.value.assign(n_components, 0.0);
  res.abs_error.assign(n_components, 0.0);

  // Components of very different magnitude need different refinement: an
  // error that is roundoff for one component can be the entire budget of
  // another. Each component therefore keeps its own panel ordering, and
  // every iteration splits the worst panel of the component that is
  // furthest above its own tolerance.
  std::vector<Panel> pool;          // all panels; retired ones stay as stubs
  std::vector<char> live;           // contributing and still splittable
  using Entry = std::pair<double, std::size_t>;  // (err in c, panel id)
  std::vector<std::priority_queue<Entry>> heaps(n_components);
  std::vector<double> total(n_components, 0.0), err(n_components, 0.0);

  auto push_panel = [&](double a, double b) {
    Panel p = eval_panel(f, n_components, a, b);
    res.evaluations += 15;
    const std::size_t id = pool.size();
    for (std::size_t c = 0; c < n_components; ++c) {
      total[c] += p.kronrod[c];
      err[c] += p.err[c];
      heaps[c].push({p.err[c], id});
    }
    pool.push_back(std::move(p));
    live.push_back(1);
  };

  push_panel(0.0, 1.0);

  auto target = [&](std::size_t c) {
    return rel_tol * std::max(std::abs(total[c]), abs_floor);
  };
  auto converged = [&]() {
    for (std::size_t c = 0; c < n_components; ++c) {
      if (err[c] > target(c)) return false;
    }
    return true;
  };

  std::vector<char> refinable(n_components, 1);
  while (res.evaluations + 30 <= max_evaluations) {
    // the component furthest above its tolerance, by ratio
    std::size_t cw = n_components;
    double worst_ratio = 1.0;
    for (std::size_t c = 0; c < n_components; ++c) {
      if (!refinable[c]) continue;
      const double ratio = err[c] / target(c);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        cw = c;
      }
    }
    if (cw == n_components) break;  // converged, or only dead ends remain

    auto& h = heaps[cw];
    while (!h.empty() && !live[h.top().second]) h.pop();
    if (h.empty()) {
      refinable[cw] = 0;  // every remaining panel was split or frozen
      continue;
    }
    const std::size_t id = h.top().second;
    h.pop();
    const double a = pool[id].a, b = pool[id].b;
    const double mid = 0.5 * (a + b);
    live[id] = 0;
    if (!(mid > a && mid < b)) {
      continue;  // too narrow to split; its contribution stays in place
    }
    for (std::size_t c = 0; c < n_components; ++c) {
      total[c] -= pool[id].kronrod[c];
      err[c] -= pool[id].err[c];
    }
    pool[id].kronrod = {};  // retired panels keep no payload
    pool[id].err = {};
    push_panel(a, mid);
    push_panel(mid, b);
  }

  res.value = total;
  res.abs_error = err;
  res.converged = converged();
  return res;
}

}  // namespace casimir
