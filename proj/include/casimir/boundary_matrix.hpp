// Independent reference evaluation of the scattering function Delta as a
// ratio of boundary-condition determinants. Completely separate from the
// series assembly: the stack is described region by region, the matching
// conditions at every interface fill a sparse band matrix, and Delta is
//   det M / det M0
// where M0 is M with every finite-thickness coupling factor set to zero
// (the decoupled stack). Growing exponentials are factored out of the
// basis column by column so entries stay bounded.
//
// This module exists to cross-check the production path; it is built for
// robustness, not speed.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "casimir/assembly.hpp"
#include "casimir/coefficients.hpp"
#include "casimir/phys.hpp"

namespace casimir {

// A stack of J+1 regions separated by J interfaces:
//   region 0 | interface 0 | region 1 | ... | interface J-1 | region J
// with region permittivities eps[0..J], inner-region thicknesses
// d[0..J-2] (region m in 1..J-1 has thickness d[m-1]) and per-interface
// sheet strengths omega[0..J-1]. Outer regions are semi-infinite.
struct LayerStack {
  std::vector<double> eps;
  std::vector<double> d;
  std::vector<double> omega;

  int interfaces() const { return static_cast<int>(omega.size()); }
  void validate() const;
};

// The uniform stacks the rest of the library works with, expressed as
// explicit layer lists. For DielectricCavities, n regions follow the
// pattern [outer | inner | outer | ... | inner | outer]; for
// PlasmaSheetCavities, n_cavities + 1 sheets in vacuum.
LayerStack layer_stack(const StackSpec& spec, double zeta);

// Coefficient matrix of the matching conditions, with the per-region
// decay factors exp(-K_m d_m) collected in `thickness_factor` and the
// exponentials' reference points absorbed into the column scaling
// (scale_log accumulates the log of everything factored out, so that
// log|det M_raw| = log|det coupled| + scale_log up to the origin gauge
// of the two outer columns).
//
// Column order (region-major): b_0, a_1, b_1, ..., a_{J-1}, b_{J-1}, a_J.
// Row order: interface-major, (value condition, derivative condition).
// The leading principal 2(j+1) x 2(j+1) block of the pair (coupled,
// decoupled) is exactly the matrix pair of the sub-stack truncated after
// region j+1, which is what regularized_delta exploits.
struct BoundaryMatrix {
  Eigen::MatrixXd coupled;    // with thickness factors
  Eigen::MatrixXd decoupled;  // thickness factors -> 0
  double scale_log = 0.0;     // sum_m K_m d_m over inner regions
  int dim = 0;
};

BoundaryMatrix build_matrix(const LayerStack& stack, Pol pol, double zeta,
                            double k_perp);

// Convenience overload for the uniform stacks.
BoundaryMatrix build_matrix(const StackSpec& spec, Pol pol,
                            const SpectralPoint& pt);

// Delta for the leading sub-stack with n_cavities cavities (dielectric
// kind) or n_cavities gaps (plasma kind), evaluated as a determinant
// ratio with shared row equilibration. Requires n_cavities <= the count
// encoded in `spec`. Returned value carries the sign; log_value is
// log|Delta|.
DeltaValue regularized_delta(const StackSpec& spec, Pol pol,
                             const SpectralPoint& pt, int n_cavities);

// Same, for an explicit layer list: the determinant ratio of the full
// matrix pair.
DeltaValue regularized_delta(const LayerStack& stack, Pol pol, double zeta,
                             double k_perp);

}  // namespace casimir
