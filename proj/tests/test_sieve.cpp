#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lap/arith.hpp"
#include "lap/primes.hpp"
#include "lap/sieve.hpp"

using namespace lap;

TEST_CASE("base prime table") {
  CHECK(base_primes(1) == std::vector<uint32_t>{});
  CHECK(base_primes(2) == std::vector<uint32_t>{2});
  CHECK(base_primes(10) == std::vector<uint32_t>{2, 3, 5, 7});
  CHECK(base_primes(13) == std::vector<uint32_t>{2, 3, 5, 7, 11, 13});
  CHECK(base_primes(1'000'000).size() == 78498);
}

TEST_CASE("isqrt on 64-bit inputs") {
  CHECK(isqrt_u64(0) == 0);
  CHECK(isqrt_u64(1) == 1);
  CHECK(isqrt_u64(3) == 1);
  CHECK(isqrt_u64(4) == 2);
  CHECK(isqrt_u64(999'999'999'999ULL) == 999999);
  CHECK(isqrt_u64(1'000'000'000'000ULL) == 1000000);
  const uint64_t big = 0xFFFFFFFFFFFFFFFFULL;
  CHECK(isqrt_u64(big) == 4294967295ULL);
}

TEST_CASE("prime streaming matches the table") {
  std::vector<uint32_t> got;
  for_each_prime(10'000, [&](uint64_t p) { got.push_back(uint32_t(p)); });
  CHECK(got == base_primes(10'000));
}

TEST_CASE("first block counts mod 4") {
  const auto primes = base_primes(3);
  const BlockCounts bc = sieve_block(1, 9, 4, primes);
  CHECK(bc.omega_mult(3, 3) == 1);
  CHECK(bc.omega_mult(8, 2) == 3);  // 2 = 2 (mod 4), cubed
  CHECK(bc.omega_distinct(8, 2) == 1);
  CHECK(bc.omega_mult(1, 1) == 0);
  CHECK(bc.total_big_omega(6) == 2);
}

TEST_CASE("block of n=1 only has all counters zero") {
  const BlockCounts bc = sieve_block(1, 2, 4, {});
  for (uint32_t c = 0; c < 4; ++c) {
    CHECK(bc.omega_mult(1, c) == 0);
    CHECK(bc.omega_distinct(1, c) == 0);
  }
}

TEST_CASE("lambda arrays from the first block") {
  const auto primes = base_primes(3);
  {
    const auto lam = lambda_from_counts(sieve_block(1, 9, 4, primes),
                                        ResidueSet(4, {3}));
    CHECK(lam == std::vector<int8_t>{1, 1, -1, 1, 1, -1, -1, 1});
  }
  {
    const auto lam = lambda_from_counts(sieve_block(1, 5, 2, primes),
                                        ResidueSet(2, {0}));
    CHECK(lam == std::vector<int8_t>{1, -1, 1, 1});
  }
  {
    const auto lam = lambda_from_counts(sieve_block(1, 6, 4, primes),
                                        ResidueSet(4, {1}));
    CHECK(lam == std::vector<int8_t>{1, 1, 1, 1, -1});
  }
}

TEST_CASE("full residue set reproduces classical lambda") {
  const auto primes = base_primes(isqrt_u64(4999));
  const BlockCounts bc = sieve_block(1, 5000, 3, primes);
  const auto lam = lambda_from_counts(bc, ResidueSet(3, {0, 1, 2}));
  for (uint64_t n = 1; n < 5000; ++n)
    CHECK(int(lam[n - 1]) == lambda_classical(n));
}

TEST_CASE("validation errors") {
  const auto primes = base_primes(3);
  // primes up to 3 cannot certify a block reaching 5^2
  CHECK_THROWS_AS(sieve_block(1, 26, 4, primes), std::domain_error);
  CHECK_THROWS_AS(sieve_block(0, 5, 4, primes), std::domain_error);
  CHECK_THROWS_AS(sieve_block(5, 5, 4, primes), std::domain_error);
  const BlockCounts bc = sieve_block(1, 9, 4, primes);
  CHECK_THROWS_AS(lambda_from_counts(bc, ResidueSet(5, {1})),
                  std::domain_error);
  // a table whose largest entry is below sqrt(hi-1) is still fine when no
  // prime lives in the gap
  const auto p31 = base_primes(31);
  CHECK_NOTHROW(sieve_block(1, 1026, 4, p31));  // sqrt(1025) = 32.0...
}

TEST_CASE("block decomposition is boundary independent") {
  const uint64_t N = 40'000;
  const auto primes = base_primes(isqrt_u64(N - 1));
  const BlockCounts whole = sieve_block(1, N, 12, primes);
  for (uint64_t width : {1024ULL, 1531ULL, 16384ULL}) {
    BlockCounts part;
    SieveScratch scratch;
    for (uint64_t lo = 1; lo < N; lo += width) {
      const uint64_t hi = std::min(lo + width, N);
      sieve_block_into(part, lo, hi, 12, primes, scratch);
      for (uint64_t n = lo; n < hi; ++n)
        for (uint32_t c = 0; c < 12; ++c) {
          CHECK(part.omega_mult(n, c) == whole.omega_mult(n, c));
          CHECK(part.omega_distinct(n, c) == whole.omega_distinct(n, c));
        }
    }
  }
}

TEST_CASE("sieve counts equal the factorization oracle") {
  const uint64_t N = 20'000;
  const auto primes = base_primes(isqrt_u64(N - 1));
  for (uint32_t q : {2u, 5u, 8u, 12u}) {
    const BlockCounts bc = sieve_block(1, N, q, primes);
    for (uint64_t n = 1; n < N; ++n) {
      const auto f = factorize(n);
      std::vector<uint32_t> mult(q, 0), dist(q, 0);
      for (const auto& [p, e] : f.factors) {
        mult[p % q] += e;
        dist[p % q] += 1;
      }
      for (uint32_t c = 0; c < q; ++c) {
        CHECK(bc.omega_mult(n, c) == mult[c]);
        CHECK(bc.omega_distinct(n, c) == dist[c]);
      }
    }
  }
}

TEST_CASE("a far block agrees with the oracle") {
  const uint64_t lo = 999'950'000, hi = 1'000'000'000;
  const auto primes = base_primes(isqrt_u64(hi - 1));
  const BlockCounts bc = sieve_block(lo, hi, 4, primes);
  for (uint64_t n = lo; n < hi; n += 997) {
    const auto f = factorize(n);
    std::vector<uint32_t> mult(4, 0);
    for (const auto& [p, e] : f.factors) mult[p % 4] += e;
    for (uint32_t c = 0; c < 4; ++c) CHECK(bc.omega_mult(n, c) == mult[c]);
  }
}
