#include "lap/sieve.hpp"

#include <stdexcept>

#include "lap/arith.hpp"
#include "lap/primes.hpp"

namespace lap {

namespace {

// The table must contain every prime <= sqrt(hi-1).  When its last entry
// falls short of that root, any prime in the gap proves insufficiency.
void check_prime_coverage(uint64_t hi, const std::vector<uint32_t>& primes) {
  const uint64_t root = isqrt_u64(hi - 1);
  const uint64_t have = primes.empty() ? 1 : primes.back();
  for (uint64_t k = have + 1; k <= root; ++k)
    if (is_prime(k))
      throw std::domain_error(
          "sieve_block: base prime table does not cover sqrt of block end");
}

}  // namespace

void sieve_block_into(BlockCounts& bc, uint64_t lo, uint64_t hi,
                      uint32_t modulus, const std::vector<uint32_t>& primes,
                      SieveScratch& scratch) {
  if (lo < 1 || lo >= hi) throw std::domain_error("sieve_block: need 1 <= lo < hi");
  if (modulus < 1) throw std::domain_error("sieve_block: modulus must be >= 1");
  check_prime_coverage(hi, primes);

  const uint64_t len = hi - lo;
  const uint32_t q = modulus;
  bc.lo = lo;
  bc.hi = hi;
  bc.modulus = q;
  bc.mult.assign(len * q, 0);
  bc.distinct.assign(len * q, 0);
  scratch.smooth.assign(len, 1);

  uint64_t* smooth = scratch.smooth.data();
  uint8_t* mult = bc.mult.data();
  uint8_t* distinct = bc.distinct.data();

  for (uint32_t p : primes) {
    const uint64_t p64 = p;
    if (p64 * p64 >= hi) break;  // the leftover pass classifies larger primes
    const uint32_t pc = p % q;
    // First power: every multiple gains the prime in both tables.
    {
      const uint64_t first = ((lo + p64 - 1) / p64) * p64;
      uint64_t i = first - lo;
      uint64_t idx = i * q + pc;
      for (; i < len; i += p64, idx += p64 * q) {
        smooth[i] *= p64;
        ++mult[idx];
        ++distinct[idx];
      }
    }
    // Higher powers: one extra multiplicity per level.
    for (uint64_t pe = p64 * p64; pe < hi;) {
      const uint64_t first = ((lo + pe - 1) / pe) * pe;
      uint64_t i = first - lo;
      uint64_t idx = i * q + pc;
      for (; i < len; i += pe, idx += pe * q) {
        smooth[i] *= p64;
        ++mult[idx];
      }
      if (pe > (hi - 1) / p64) break;  // next power would clear the block
      pe *= p64;
    }
  }

  // Anything the strides missed is a single prime > sqrt(hi-1): two base
  // primes that large would already exceed hi.
  uint64_t idx0 = 0;
  for (uint64_t i = 0; i < len; ++i, idx0 += q) {
    const uint64_t n = lo + i;
    const uint64_t s = smooth[i];
    if (s == n) continue;
    const uint64_t r = (s == 1) ? n : n / s;
    if (r == 1) continue;  // n == 1
    const uint32_t c = static_cast<uint32_t>(r % q);
    ++mult[idx0 + c];
    ++distinct[idx0 + c];
  }
}

BlockCounts sieve_block(uint64_t lo, uint64_t hi, uint32_t modulus,
                        const std::vector<uint32_t>& primes) {
  BlockCounts bc;
  SieveScratch scratch;
  sieve_block_into(bc, lo, hi, modulus, primes, scratch);
  return bc;
}

void lambda_from_counts(const BlockCounts& bc, const ResidueSet& rs,
                        int8_t* out) {
  if (rs.modulus != bc.modulus)
    throw std::domain_error("lambda_from_counts: modulus mismatch");
  const uint64_t len = bc.size();
  const uint32_t q = bc.modulus;
  const uint8_t* mult = bc.mult.data();
  uint64_t row = 0;
  for (uint64_t i = 0; i < len; ++i, row += q) {
    uint32_t parity = 0;
    for (uint32_t c : rs.residues) parity += mult[row + c];
    out[i] = (parity & 1) ? -1 : 1;
  }
}

std::vector<int8_t> lambda_from_counts(const BlockCounts& bc,
                                       const ResidueSet& rs) {
  std::vector<int8_t> out(bc.size());
  lambda_from_counts(bc, rs, out.data());
  return out;
}

}  // namespace lap
