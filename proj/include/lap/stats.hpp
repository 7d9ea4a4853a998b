#pragma once

#include <cstdint>
#include <vector>

#include "lap/residues.hpp"

namespace lap {

// counts[k] = #{n <= x : omega(n;q,a) = k} (distinct primes; multiplicity
// when with_multiplicity).  Size is 1 + the largest value attained.
std::vector<uint64_t> omega_value_counts(uint64_t x, uint32_t q, uint32_t a,
                                         bool with_multiplicity = false);

// Both sides of sum over n <= x of omega(n;q,a) = sum over primes p <= x,
// p = a (mod q), of floor(x/p); they agree exactly (each prime contributes
// once per multiple).
struct OmegaSumIdentity {
  uint64_t lhs = 0;
  uint64_t rhs = 0;
};
OmegaSumIdentity omega_sum_identity(uint64_t x, uint32_t q, uint32_t a);

struct OmegaMoments {
  double mean = 0;                    // (1/x) sum omega(n;q,a)
  double centered_second_moment = 0;  // (1/x) sum (omega - c)^2
  double loglog_x_over_phi = 0;       // c = loglog(x)/phi(q)
};
// Throws std::domain_error when x < 3 (loglog undefined or degenerate).
OmegaMoments omega_moments(uint64_t x, uint32_t q, uint32_t a);

// Distribution of the standardized statistic (omega(n;q,a) - c)/sqrt(c),
// c = loglog(x)/phi(q), against the standard normal: mass per bin over the
// given edges (m edges make m+1 bins, outermost unbounded; mass sums to 1)
// and the Kolmogorov-Smirnov distance max over edges |ECDF - Phi|.
struct ErdosKacHistogram {
  std::vector<double> edges;
  std::vector<double> mass;
  double ks = 0;
  uint64_t total = 0;
};
// Default edges -4, -3.5, ..., +4.  Throws std::domain_error when x < 1000
// (too few samples to bin meaningfully).
ErdosKacHistogram erdos_kac_histogram(uint64_t x, uint32_t q, uint32_t a,
                                      std::vector<double> edges = {});

// sum over n = 1..xmax-max(shifts) of prod_h lambda(n+h; q, R), and that sum
// divided by the window count.  Shifts must be distinct (duplicates square
// away to the principal term and are rejected with std::domain_error).
struct CorrelationResult {
  int64_t sum = 0;
  double normalized = 0;
  uint64_t window = 0;
};
CorrelationResult correlation(uint64_t xmax, const ResidueSet& rs,
                              std::vector<uint32_t> shifts);

// counts[b] = #{1 <= n <= xmax-k+1 : pattern of (lambda(n), ..,
// lambda(n+k-1)) is b}, bit j of b (most significant first) set iff the j-th
// value is +1.  Sum of counts = xmax-k+1.  Requires 1 <= k <= 4.
std::vector<uint64_t> sign_pattern_counts(uint64_t xmax, const ResidueSet& rs,
                                          uint32_t k);

// Sum over n <= x, n = P (mod Q), of classical lambda(n).
int64_t classical_lambda_restricted(uint64_t x, uint32_t Q, uint32_t P);

// sum over primes p <= x, p = a (mod q), of 1/p (ascending order), plus the
// Mertens-type constant estimate sum - loglog(x)/phi(q).
struct MertensResult {
  double sum = 0;
  double g_estimate = 0;
};
MertensResult mertens_ap(uint64_t x, uint32_t q, uint32_t a);  // x >= 3

}  // namespace lap
