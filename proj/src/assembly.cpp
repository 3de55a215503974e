#include "casimir/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace casimir {

namespace {

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    // exact at every step: c * (n - k + i) is divisible by i here
    c = c * static_cast<std::uint64_t>(n - k + i) /
        static_cast<std::uint64_t>(i);
  }
  return c;
}

// Q = J! / prod m_t! for a partition given as a descending parts list,
// computed as a telescoping product of binomials (each factor counts the
// placements of one run of equal parts).
std::uint64_t ordering_count(const std::vector<int>& parts) {
  std::uint64_t q = 1;
  int placed = 0;
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    const int run = static_cast<int>(j - i);
    placed += run;
    q *= binomial_u64(placed, run);
    i = j;
  }
  return q;
}

void enumerate_partitions(int remaining, int max_part, std::vector<int>& cur,
                          std::vector<PartitionTerm>& out) {
  if (remaining == 0) {
    out.push_back({cur, ordering_count(cur)});
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    enumerate_partitions(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<PartitionTerm> partitions_with_multiplicity(int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument(
        "partitions_with_multiplicity: n must be in [1, 64]");
  }
  std::vector<PartitionTerm> out;
  std::vector<int> cur;
  enumerate_partitions(n, n, cur, out);
  return out;
}

std::string expand_delta(int n) {
  auto terms = partitions_with_multiplicity(n);
  // order: fewer factors first, then lexicographically descending parts
  std::stable_sort(terms.begin(), terms.end(),
                   [](const PartitionTerm& a, const PartitionTerm& b) {
                     if (a.parts.size() != b.parts.size())
                       return a.parts.size() < b.parts.size();
                     return a.parts > b.parts;
                   });
  std::ostringstream os;
  os << "D" << n << " =";
  bool first = true;
  for (const auto& t : terms) {
    os << (first ? " " : " + ");
    first = false;
    if (t.multiplicity != 1) os << t.multiplicity << " ";
    // factors in ascending index with exponents
    std::vector<int> asc(t.parts.rbegin(), t.parts.rend());
    std::size_t i = 0;
    bool first_factor = true;
    while (i < asc.size()) {
      std::size_t j = i;
      while (j < asc.size() && asc[j] == asc[i]) ++j;
      if (!first_factor) os << " ";
      first_factor = false;
      os << "I" << asc[i];
      if (j - i > 1) os << "^" << (j - i);
      i = j;
    }
  }
  return os.str();
}

namespace {

// Shared excess recurrence: given i1 = I_1 - 1 and I_2..I_n, returns
// D_0..D_n with D_m = Delta_m - 1.
std::vector<double> excess_recurrence(double i1, const std::vector<double>& full_terms,
                                      int n) {
  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  double tail_sum = 0.0;  // sum_{k=2}^{m} I_k
  for (int m = 1; m <= n; ++m) {
    if (m >= 2) tail_sum += full_terms[static_cast<std::size_t>(m - 1)];
    double s = i1 + tail_sum;
    for (int k = 1; k <= m; ++k) {
      s += full_terms[static_cast<std::size_t>(k - 1)] *
           d[static_cast<std::size_t>(m - k)];
    }
    d[static_cast<std::size_t>(m)] = s;
  }
  return d;
}

DeltaValue from_excess(double excess) {
  DeltaValue v;
  v.value = 1.0 + excess;
  v.log_value = std::log1p(excess);
  return v;
}

}  // namespace

DeltaValue delta_dielectric(const CavityKernels& kern, int n_cavities) {
  if (n_cavities < 1) {
    throw std::invalid_argument("delta_dielectric: n_cavities must be >= 1");
  }
  const auto series = interaction_series(kern, n_cavities);
  const auto d = excess_recurrence(kern.i1, series.terms, n_cavities);
  return from_excess(d.back());
}

DeltaValue delta_plasma(const CavityKernels& kern, int n_gaps) {
  if (n_gaps < 1) {
    throw std::invalid_argument("delta_plasma: n_gaps must be >= 1");
  }
  if (n_gaps % 2 == 1) {
    return delta_dielectric(kern, (n_gaps + 1) / 2);
  }
  const int m = n_gaps / 2;
  const auto series = interaction_series(kern, m + 1);
  const auto d = excess_recurrence(kern.i1, series.terms, m);
  // Delta_{2m} - 1 = D_m + sum_{k=2}^{m+1} (1 + D_{m+1-k}) I'_k
  double s = d[static_cast<std::size_t>(m)];
  for (int k = 2; k <= m + 1; ++k) {
    s += (1.0 + d[static_cast<std::size_t>(m + 1 - k)]) *
         series.primed_terms[static_cast<std::size_t>(k - 1)];
  }
  return from_excess(s);
}

double delta_by_partitions(const InteractionSeries& series, int n_cavities) {
  if (n_cavities < 1 ||
      series.terms.size() < static_cast<std::size_t>(n_cavities)) {
    throw std::invalid_argument("delta_by_partitions: need I_1..I_N");
  }
  double total = 0.0;
  for (const auto& t : partitions_with_multiplicity(n_cavities)) {
    double prod = static_cast<double>(t.multiplicity);
    for (int p : t.parts) prod *= series.terms[static_cast<std::size_t>(p - 1)];
    total += prod;
  }
  return total;
}

double delta_by_compositions(const InteractionSeries& series, int n_cavities) {
  if (n_cavities < 1 || n_cavities > 12 ||
      series.terms.size() < static_cast<std::size_t>(n_cavities)) {
    throw std::invalid_argument(
        "delta_by_compositions: need I_1..I_N and N <= 12");
  }
  // each bitmask over the N-1 junctions splits N into one composition
  double total = 0.0;
  const int n = n_cavities;
  const std::uint32_t masks = 1u << (n - 1);
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    double prod = 1.0;
    int run = 1;
    for (int j = 0; j < n - 1; ++j) {
      if (mask & (1u << j)) {
        prod *= series.terms[static_cast<std::size_t>(run - 1)];
        run = 1;
      } else {
        ++run;
      }
    }
    prod *= series.terms[static_cast<std::size_t>(run - 1)];
    total += prod;
  }
  return total;
}

}  // namespace casimir
