#pragma once

#include <cstdint>
#include <vector>

#include "lap/residues.hpp"

namespace lap {

// Residue-class prime-factor counters for every n in [lo, hi).
// mult[(n-lo)*modulus + c]     = #{prime factors p of n : p % modulus == c},
//                                with multiplicity;
// distinct[(n-lo)*modulus + c] = same, counting each distinct prime once.
// Summing mult over all classes gives the classical Omega(n), which is at
// most 63 for n < 2^64, so 8-bit counters never saturate.
struct BlockCounts {
  uint64_t lo = 0, hi = 0;  // half-open range [lo, hi)
  uint32_t modulus = 0;
  std::vector<uint8_t> mult;
  std::vector<uint8_t> distinct;

  uint64_t size() const { return hi - lo; }
  uint8_t omega_mult(uint64_t n, uint32_t c) const {
    return mult[(n - lo) * modulus + c];
  }
  uint8_t omega_distinct(uint64_t n, uint32_t c) const {
    return distinct[(n - lo) * modulus + c];
  }
  uint32_t total_big_omega(uint64_t n) const {
    uint32_t t = 0;
    const uint8_t* row = mult.data() + (n - lo) * modulus;
    for (uint32_t c = 0; c < modulus; ++c) t += row[c];
    return t;
  }
};

// Per-thread scratch reused across blocks to avoid reallocation.
struct SieveScratch {
  std::vector<uint64_t> smooth;
};

// Factor-counts the block [lo, hi): for each base prime p with p*p < hi and
// each power p^e < hi, strides over its multiples, multiplying a smooth-part
// accumulator and bumping the class counters; any element whose accumulator
// falls short of n then owes exactly one prime > sqrt(hi-1), classified with
// a single division.  modulus >= 1 (modulus 1 keeps plain Omega/omega).
// Requires 1 <= lo < hi and a base table covering every prime <= sqrt(hi-1);
// throws std::domain_error otherwise.
void sieve_block_into(BlockCounts& bc, uint64_t lo, uint64_t hi,
                      uint32_t modulus, const std::vector<uint32_t>& primes,
                      SieveScratch& scratch);
BlockCounts sieve_block(uint64_t lo, uint64_t hi, uint32_t modulus,
                        const std::vector<uint32_t>& primes);

// lambda(n;q,R) for every n in the block, in block order: parity of the sum
// of the class counters over R.  Throws std::domain_error when rs.modulus
// differs from bc.modulus.
void lambda_from_counts(const BlockCounts& bc, const ResidueSet& rs,
                        int8_t* out);
std::vector<int8_t> lambda_from_counts(const BlockCounts& bc,
                                       const ResidueSet& rs);

}  // namespace lap
