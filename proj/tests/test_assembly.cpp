// Partition combinatorics, the symbolic expansion text, and the equality
// of the three Delta evaluations (recurrence, partition sum, composition
// sum) on randomized kernels.
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "casimir/assembly.hpp"
#include "casimir/coefficients.hpp"

using namespace casimir;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Absolute-value sum of the multiplicity-weighted partition products. This
// is the magnitude the floating-point sum actually works with; when the
// result is many orders below it the sum is dominated by cancellation and
// a tight relative comparison is meaningless for any evaluation order.
double partition_abs_scale(const InteractionSeries& series, int n) {
  double scale = 0.0;
  for (const auto& t : partitions_with_multiplicity(n)) {
    double prod = static_cast<double>(t.multiplicity);
    for (int p : t.parts) {
      prod *= std::abs(series.terms[static_cast<std::size_t>(p - 1)]);
    }
    scale += prod;
  }
  return scale;
}

// Keeps the amplification of summation roundoff below ~1e2, so an exact
// implementation stays comfortably inside the 1e-12 comparisons below.
constexpr double kConditionFloor = 1e-2;

CavityKernels random_sheet_kernels(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double omega = std::pow(10.0, 3.5 + 2.5 * u(rng));
  const double zeta = std::pow(10.0, 4.5 + 3.0 * u(rng));
  const double k = std::pow(10.0, 4.5 + 3.0 * u(rng));
  const double d = std::pow(10.0, -9.2 + 1.2 * u(rng));
  const Pol pol = (rng() & 1u) ? Pol::TM : Pol::TE;
  const auto iface = rst(pol, 1.0, 1.0, omega, zeta, k);
  return kernels(iface, iface, d);
}

CavityKernels random_dielectric_kernels(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double eps_wall = 1.5 + 3.0 * u(rng);
  const double zeta = std::pow(10.0, 4.5 + 3.0 * u(rng));
  const double k = std::pow(10.0, 4.5 + 3.0 * u(rng));
  const double d = std::pow(10.0, -9.2 + 1.2 * u(rng));
  const Pol pol = (rng() & 1u) ? Pol::TM : Pol::TE;
  const auto ij = rst(pol, eps_wall, 1.0, 0.0, zeta, k);
  const auto jk = rst(pol, 1.0, eps_wall, 0.0, zeta, k);
  return kernels(ij, jk, d);
}

}  // namespace

TEST_CASE("expand_delta: closed forms for small stacks") {
  CHECK(expand_delta(1) == "D1 = I1");
  CHECK(expand_delta(2) == "D2 = I2 + I1^2");
  CHECK(expand_delta(3) == "D3 = I3 + 2 I1 I2 + I1^3");
  CHECK(expand_delta(4) == "D4 = I4 + 2 I1 I3 + I2^2 + 3 I1^2 I2 + I1^4");
}

TEST_CASE("partitions_with_multiplicity: counts and argument checks") {
  CHECK(partitions_with_multiplicity(1).size() == 1);
  CHECK(partitions_with_multiplicity(5).size() == 7);
  CHECK(partitions_with_multiplicity(10).size() == 42);
  CHECK(partitions_with_multiplicity(20).size() == 627);
  CHECK_THROWS_AS(partitions_with_multiplicity(0), std::invalid_argument);
  CHECK_THROWS_AS(partitions_with_multiplicity(65), std::invalid_argument);
}

TEST_CASE("partitions_with_multiplicity: ordering counts") {
  // orderings of distinct parts = J!, runs of equal parts divide it out
  for (const auto& t : partitions_with_multiplicity(10)) {
    if (t.parts == std::vector<int>{4, 3, 2, 1}) CHECK(t.multiplicity == 24);
    if (t.parts == std::vector<int>{2, 1, 1, 1, 1, 1, 1, 1, 1})
      CHECK(t.multiplicity == 9);
    if (t.parts == std::vector<int>{5, 5}) CHECK(t.multiplicity == 1);
    if (t.parts == std::vector<int>{3, 2, 2, 1, 1, 1})
      CHECK(t.multiplicity == 60);
  }
}

TEST_CASE("partition multiplicities sum to the composition count 2^(N-1)") {
  for (int n = 1; n <= 20; ++n) {
    std::uint64_t total = 0;
    for (const auto& t : partitions_with_multiplicity(n)) {
      total += t.multiplicity;
    }
    CHECK(total == (std::uint64_t{1} << (n - 1)));
  }
}

TEST_CASE("Delta evaluations agree: recurrence vs partitions vs compositions") {
  std::mt19937_64 rng(97531);
  int admissible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto kern = (trial % 2) ? random_sheet_kernels(rng)
                                  : random_dielectric_kernels(rng);
    const auto series = interaction_series(kern, 10);
    for (int n : {1, 2, 3, 5, 8, 10}) {
      const double by_part = delta_by_partitions(series, n);
      const double by_comp = delta_by_compositions(series, n);
      const double by_rec = delta_dielectric(kern, n).value;
      if (std::abs(by_part) < kConditionFloor * partition_abs_scale(series, n))
        continue;
      ++admissible;
      CHECK(rel(by_part, by_comp) < 1e-12);
      CHECK(rel(by_rec, by_part) < 1e-12);
    }
  }
  // the conditioning gate must not hollow the test out
  CHECK(admissible >= 500);
}

TEST_CASE("delta_plasma: odd gap counts reduce to the cavity recurrence") {
  std::mt19937_64 rng(86420);
  for (int trial = 0; trial < 50; ++trial) {
    const auto kern = random_sheet_kernels(rng);
    for (int gaps : {1, 3, 5, 7}) {
      const auto a = delta_plasma(kern, gaps);
      const auto b = delta_dielectric(kern, (gaps + 1) / 2);
      CHECK(a.value == b.value);
      CHECK(a.log_value == b.log_value);
    }
  }
}

TEST_CASE("delta_plasma: even gap counts close the chain with primed terms") {
  std::mt19937_64 rng(11223);
  int admissible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto kern = random_sheet_kernels(rng);
    for (int gaps : {2, 4, 6, 8}) {
      const int m = gaps / 2;
      const auto series = interaction_series(kern, m + 1);
      // independent evaluation: Delta_2m = sum_k I'_k Delta_{m+1-k}
      double expect = 0.0;
      double scale = 0.0;
      for (int k = 1; k <= m + 1; ++k) {
        const double head =
            (m + 1 - k == 0)
                ? 1.0
                : delta_by_partitions(series, m + 1 - k);
        const double head_scale =
            (m + 1 - k == 0)
                ? 1.0
                : partition_abs_scale(series, m + 1 - k);
        const double w = series.primed_terms[static_cast<std::size_t>(k - 1)];
        expect += w * head;
        scale += std::abs(w) * head_scale;
      }
      if (std::abs(expect) < kConditionFloor * scale) continue;
      ++admissible;
      const auto got = delta_plasma(kern, gaps);
      CHECK(rel(got.value, expect) < 1e-12);
    }
  }
  CHECK(admissible >= 120);
}

TEST_CASE("Delta reference sums: argument validation") {
  std::mt19937_64 rng(5);
  const auto kern = random_sheet_kernels(rng);
  const auto series = interaction_series(kern, 4);
  CHECK_THROWS_AS(delta_by_partitions(series, 5), std::invalid_argument);
  CHECK_THROWS_AS(delta_by_compositions(series, 13), std::invalid_argument);
  CHECK_THROWS_AS(delta_dielectric(kern, 0), std::invalid_argument);
  CHECK_THROWS_AS(delta_plasma(kern, 0), std::invalid_argument);
}

TEST_CASE("DeltaValue: value and log agree where the value is representable") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const auto kern = random_sheet_kernels(rng);
    const auto v = delta_plasma(kern, 5);
    CHECK(rel(v.value, std::exp(v.log_value)) < 1e-13);
  }
}
