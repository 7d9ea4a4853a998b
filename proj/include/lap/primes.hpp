#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace lap {

// Primes p <= limit, ascending; empty when limit < 2.
// Throws std::invalid_argument when limit exceeds UINT32_MAX.
std::vector<uint32_t> base_primes(uint64_t limit);

// floor(sqrt(n)) without floating-point edge cases.
uint64_t isqrt_u64(uint64_t n);

// Calls f(p) for every prime p <= limit, ascending.  Segmented odd-only
// sieve: memory stays O(sqrt(limit) + segment) independent of limit.
template <class F>
void for_each_prime(uint64_t limit, F&& f) {
  if (limit < 2) return;
  f(uint64_t{2});
  const std::vector<uint32_t> base = base_primes(isqrt_u64(limit));
  constexpr uint64_t kSegmentOdds = uint64_t{1} << 20;
  std::vector<uint8_t> composite;
  for (uint64_t lo = 3; lo <= limit; lo += 2 * kSegmentOdds) {
    const uint64_t hi = std::min(limit, lo + 2 * kSegmentOdds - 2);  // inclusive
    const uint64_t count = (hi - lo) / 2 + 1;
    composite.assign(count, 0);
    for (uint32_t p : base) {
      if (p == 2) continue;
      const uint64_t pp = uint64_t{p} * p;
      if (pp > hi) break;
      uint64_t start = std::max(pp, ((lo + p - 1) / p) * p);
      if ((start & 1) == 0) start += p;  // only odd multiples live in the map
      for (uint64_t m = start; m <= hi; m += 2 * uint64_t{p})
        composite[(m - lo) / 2] = 1;
    }
    for (uint64_t i = 0; i < count; ++i)
      if (!composite[i]) f(lo + 2 * i);
  }
}

}  // namespace lap
