// Adaptive Gauss-Kronrod (7-15) quadrature for vector-valued integrands
// on [0, 1], with batched abscissa evaluation so SIMD integrand kernels
// see all 15 nodes of a panel at once.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace casimir {

// Evaluate the integrand at `n` abscissae x[0..n-1]; write one value per
// component per abscissa into out[c * n + i] (component-major).
using BatchIntegrand =
    std::function<void(const double* x, std::size_t n, double* out)>;

struct QuadratureResult {
  std::vector<double> value;      // per component
  std::vector<double> abs_error;  // per component estimate
  std::size_t evaluations = 0;    // abscissa count
  bool converged = false;
};

// Subdivides until every component satisfies
//   abs_error[c] <= rel_tol * max(|value[c]|, abs_floor)
// or the abscissa budget is exhausted (converged = false then; the best
// estimate so far is still returned). abs_floor guards components that
// integrate to zero.
QuadratureResult integrate_gk(const BatchIntegrand& f, std::size_t n_components,
                              double rel_tol, std::size_t max_evaluations,
                              double abs_floor = 0.0);

// The 15-point Kronrod / 7-point Gauss rule on [a, b] for one component
// (test hook; integrate_gk uses the same nodes internally).
void gk15_nodes(double a, double b, double* x15);

}  // namespace casimir
