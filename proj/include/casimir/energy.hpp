// Casimir energy per unit area of an N-cavity stack at finite temperature:
// Matsubara sum over imaginary frequencies of transverse-momentum
// integrals of log Delta, with the l = 0 term at half weight.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/phys.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct QuadratureConfig {
  double rel_tol = 1e-8;          // per-frequency momentum integral
  std::size_t max_nodes = 400000;  // abscissa budget per momentum integral
  double matsubara_rel_tail = 1e-10;  // frequency-sum truncation target
  int l_max_cap = 200000;         // hard stop on the frequency index
  std::string kernel = "auto";    // "scalar" | "avx2" | "auto"
  int threads = 1;                // worker threads for the frequency loop
};

struct EnergyResult {
  double e_per_area = 0.0;  // J/m^2
  double tm_part = 0.0;
  double te_part = 0.0;
  int l_used = 0;                 // highest Matsubara index evaluated
  std::size_t k_nodes_used = 0;   // total abscissa count
  double est_error = 0.0;         // quadrature + truncation, absolute
};

// Thrown when a momentum integral or the frequency sum fails to reach its
// tolerance within budget; carries the best partial result.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, EnergyResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const EnergyResult& partial() const { return partial_; }

 private:
  EnergyResult partial_;
};

// Energy per unit area. Deterministic for a fixed config: results are
// reduced in frequency order regardless of thread count.
EnergyResult casimir_energy(const StackSpec& spec, const QuadratureConfig& cfg);

// One frequency's momentum integral per polarization (before the
// k_B T / (2 pi) prefactor and the half weight at l = 0); test hook.
struct PerFrequencyIntegral {
  double tm = 0.0;
  double te = 0.0;
  std::size_t nodes = 0;
};
PerFrequencyIntegral per_l_integral(const StackSpec& spec, int l,
                                    const QuadratureConfig& cfg);

// E[N] / (N E[1]) for each requested cavity count, from one shared
// frequency sweep (every N sees identical spectral sampling, so common
// quadrature error cancels in the ratios).
struct RatioPoint {
  int n = 0;
  double energy = 0.0;      // E[N], J/m^2
  double tm_part = 0.0;
  double te_part = 0.0;
  double ratio = 0.0;       // E[N] / (N E[1]), TM+TE
  double ratio_tm = 0.0;    // TM-only ratio
};
struct SweepDiagnostics {
  int l_used = 0;
  std::size_t k_nodes_used = 0;
  double est_error = 0.0;  // aggregate over all components, integrand units
};
std::vector<RatioPoint> ratio_curve(const StackSpec& base,
                                    const std::vector<int>& n_list,
                                    const QuadratureConfig& cfg,
                                    SweepDiagnostics* diag = nullptr);

}  // namespace casimir
