#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lap/residues.hpp"

namespace lap {

// n = prod p_i^{e_i} with p_i strictly increasing.
struct Factorization {
  std::vector<std::pair<uint64_t, uint32_t>> factors;

  uint32_t big_omega() const;    // sum of exponents
  uint32_t small_omega() const;  // number of distinct primes
};

// Full factorization for any 1 <= n <= 2^63 - 1: trial division by small
// primes, then deterministic Miller-Rabin plus Pollard rho (Brent cycling)
// for the remaining cofactor.  Throws std::domain_error on n = 0.
Factorization factorize(uint64_t n);

// Deterministic for all 64-bit n (fixed Miller-Rabin base set).
bool is_prime(uint64_t n);

// Omega(n;q,R): prime factors of n lying in the residue classes R mod q,
// counted with multiplicity; omega(n;q,R) counts each distinct prime once.
uint32_t big_omega_ap(uint64_t n, const ResidueSet& rs);
uint32_t small_omega_ap(uint64_t n, const ResidueSet& rs);

// lambda(n;q,R) = (-1)^{Omega(n;q,R)}.  Completely multiplicative in n; the
// product over all classes R = {0..q-1} recovers the classical lambda(n).
int lambda_ap(uint64_t n, const ResidueSet& rs);

uint32_t big_omega(uint64_t n);   // classical Omega(n)
int lambda_classical(uint64_t n);  // (-1)^{Omega(n)}

// S(n;q,a) = sum over divisors d of n of lambda(d;q,a), for a single class a.
// Closed form: split n = n1 * n2 with n2 the largest divisor supported on
// primes = a (mod q); then S = tau(n1) if n2 is a perfect square, else 0.
// Throws std::domain_error unless rs holds exactly one residue.
int64_t divisor_sum_s_closed(uint64_t n, const ResidueSet& rs);
// The literal divisor sum, for cross-checking the closed form.
int64_t divisor_sum_s_direct(uint64_t n, const ResidueSet& rs);

}  // namespace lap
