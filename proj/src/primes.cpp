#include "lap/primes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lap {

uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;                      // too high
  while ((r + 1) <= n / (r + 1)) ++r;                  // too low
  return r;
}

std::vector<uint32_t> base_primes(uint64_t limit) {
  if (limit > std::numeric_limits<uint32_t>::max())
    throw std::invalid_argument("base_primes: limit exceeds 32-bit range");
  std::vector<uint32_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  if (limit < 3) return primes;
  // Odd-only bitmap: index i represents 2i + 3.
  const uint64_t count = (limit - 3) / 2 + 1;
  std::vector<uint8_t> composite(count, 0);
  for (uint64_t i = 0; i < count; ++i) {
    if (composite[i]) continue;
    const uint64_t p = 2 * i + 3;
    if (p * p <= limit)
      for (uint64_t m = p * p; m <= limit; m += 2 * p)
        composite[(m - 3) / 2] = 1;
  }
  for (uint64_t i = 0; i < count; ++i)
    if (!composite[i]) primes.push_back(static_cast<uint32_t>(2 * i + 3));
  return primes;
}

}  // namespace lap
