// Assembly of the multi-cavity scattering determinant Delta_N from the
// per-cavity interaction terms: partition/composition expansions (exact
// combinatorics, used for cross-checks and the symbolic expansion command)
// and the production recurrences (cancellation-free, used by the energy
// integrators).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "casimir/coefficients.hpp"
#include "casimir/phys.hpp"

namespace casimir {

// One term of the composition expansion
//   Delta_N = sum over partitions (n_1 >= n_2 >= ... ) of N:
//             Q * I_{n_1} I_{n_2} ... I_{n_J}
// where Q counts the distinct orderings of the parts,
//   Q = J! / prod_t m_t!   (m_t = multiplicity of part value t).
struct PartitionTerm {
  std::vector<int> parts;        // descending
  std::uint64_t multiplicity;    // Q
};

// All partitions of n with multiplicities. Valid for 1 <= n <= 64
// (multiplicities and their total 2^{n-1} stay within uint64 there).
std::vector<PartitionTerm> partitions_with_multiplicity(int n);

// Human-readable expansion of Delta_N in terms of I_1..I_N, e.g.
//   "D4 = I4 + 2 I1 I3 + I2^2 + 3 I1^2 I2 + I1^4".
// Terms are ordered by part count ascending, then lexicographically
// descending on the sorted parts; factors print in ascending index.
std::string expand_delta(int n);

// Scattering function value. `log_value` is always finite and is the
// quantity the energy integrand uses; `value` = exp(log_value) * sign
// may underflow for deep stacks.
struct DeltaValue {
  double value = 1.0;
  double log_value = 0.0;
};

// Delta_N for N cavities from one cavity's kernels, via the excess
// recurrence  D_n = (I_1 - 1) + sum_{k=2}^{n} I_k + sum_{k=1}^{n} I_k D_{n-k},
// D_0 = 0, Delta_N = 1 + D_N. Using (I_1 - 1) as the stored product keeps
// the result accurate when Delta_N - 1 is tiny.
DeltaValue delta_dielectric(const CavityKernels& kern, int n_cavities);

// Delta for a plasma-sheet stack with n_gaps uniform gaps. Odd gap counts
// map to the recurrence above with (n_gaps + 1) / 2 cavities; even counts
// close the chain with the primed terms:
//   Delta^{even}_{2m} = sum_{k=1}^{m+1} Delta_{m+1-k} I'_k.
DeltaValue delta_plasma(const CavityKernels& kern, int n_gaps);

// Reference evaluations used by tests, both computing
//   Delta_N = sum over partitions / compositions of products of I_k.
// The composition variant enumerates all 2^{N-1} compositions directly
// (practical for N <= 12).
double delta_by_partitions(const InteractionSeries& series, int n_cavities);
double delta_by_compositions(const InteractionSeries& series, int n_cavities);

}  // namespace casimir
