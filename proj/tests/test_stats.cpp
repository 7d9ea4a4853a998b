#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lap/arith.hpp"
#include "lap/stats.hpp"

using namespace lap;

TEST_CASE("omega value counts") {
  // n <= 16, q=4, a=1: relevant primes 5 and 13; 5,10,13,15 have one each
  const auto c = omega_value_counts(16, 4, 1);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == 12);
  CHECK(c[1] == 4);
  // multiplicity variant via 2-power class: v2(n) over n <= 16
  const auto m = omega_value_counts(16, 2, 0, true);
  REQUIRE(m.size() == 5);
  CHECK(m[0] == 8);   // odd n
  CHECK(m[1] == 4);   // 2, 6, 10, 14
  CHECK(m[2] == 2);   // 4, 12
  CHECK(m[3] == 1);   // 8
  CHECK(m[4] == 1);   // 16
  CHECK(std::accumulate(m.begin(), m.end(), uint64_t{0}) == 16);
}

TEST_CASE("prime-side and value-side omega sums agree") {
  const struct {
    uint32_t q, a;
    uint64_t frozen;
  } cases[] = {{4, 1, 1009350}, {4, 3, 1344358}, {5, 2, 1044099},
               {6, 1, 939315}};
  for (const auto& t : cases) {
    const auto id = omega_sum_identity(1'000'000, t.q, t.a);
    CHECK(id.lhs == id.rhs);
    CHECK(id.lhs == t.frozen);
  }
  const auto small = omega_sum_identity(16, 4, 1);
  CHECK(small.lhs == 4);
  CHECK(small.rhs == 4);
}

TEST_CASE("omega moments match the direct sums") {
  const auto m = omega_moments(1'000'000, 4, 1);
  // frozen direct sums: S1 = 1009350, S2 = sum (omega - c)^2 = 1655942.06...
  CHECK(std::fabs(m.mean - 1009350.0 / 1e6) <= 1e-12);
  const double c = std::log(std::log(1e6)) / 2.0;
  CHECK(std::fabs(m.loglog_x_over_phi - c) <= 1e-12);
  CHECK(m.centered_second_moment > 0);
  // reconstruct from the frozen raw sums S1 = sum omega, S2 = sum omega^2:
  // (1/x) sum (omega - c)^2 = S2/x - 2c S1/x + c^2
  const double expected_m2 = 1655942.0 / 1e6 - 2 * c * (1009350.0 / 1e6) + c * c;
  CHECK(std::fabs(m.centered_second_moment - expected_m2) <= 1e-9);
  CHECK_THROWS_AS(omega_moments(2, 4, 1), std::domain_error);
}

TEST_CASE("standardized omega histogram") {
  const auto h = erdos_kac_histogram(10'000, 4, 1);
  REQUIRE(h.edges.size() == 17);  // -4 : 0.5 : 4
  CHECK(h.edges.front() == -4.0);
  CHECK(h.edges.back() == 4.0);
  REQUIRE(h.mass.size() == 18);
  double total_mass = 0;
  for (double m : h.mass) {
    CHECK(m >= 0.0);
    total_mass += m;
  }
  CHECK(std::fabs(total_mass - 1.0) <= 1e-12);
  CHECK(h.total == 10'000);
  CHECK(std::fabs(h.ks - 0.3524) <= 5e-4);
  // convergence toward the normal: more range, smaller distance
  const auto h6 = erdos_kac_histogram(1'000'000, 4, 1);
  CHECK(h6.ks < h.ks);
  CHECK_THROWS_AS(erdos_kac_histogram(999, 4, 1), std::domain_error);
  // custom edges
  const auto hc = erdos_kac_histogram(10'000, 4, 1, {0.0});
  REQUIRE(hc.mass.size() == 2);
  CHECK(std::fabs(hc.mass[0] + hc.mass[1] - 1.0) <= 1e-12);
}

TEST_CASE("autocorrelation of restricted lambda") {
  const ResidueSet rs(4, {3});
  {  // shift {0}: product is a single lambda, so this is the plain sum
    const auto c = correlation(8, rs, {0});
    CHECK(c.sum == 2);
    CHECK(c.window == 8);
    CHECK(std::fabs(c.normalized - 2.0 / 8.0) <= 1e-15);
  }
  {  // shifts {0,1} over n <= 7: lambda values 1,1,-1,1,1,-1,-1,1
    // pairwise products: 1,-1,-1,1,-1,1,-1 -> sum = -1
    const auto c = correlation(8, rs, {0, 1});
    CHECK(c.window == 7);
    CHECK(c.sum == -1);
  }
  {  // triple correlation, tiny exact case; lambda = 1,1,-1,1,1,-1,-1,1
    const auto c = correlation(8, rs, {0, 1, 2});
    // windows: --+ , -+- , +-- , --+ , +++ (n=5: 1,-1,-1) , +++ (n=6)
    // products: -1, -1, -1, -1, +1, +1
    CHECK(c.sum == -2);
    CHECK(c.window == 6);
  }
  CHECK_THROWS_AS(correlation(100, rs, {1, 1}), std::domain_error);
  CHECK_THROWS_AS(correlation(100, rs, {}), std::domain_error);
  // shift order must not matter
  const auto a = correlation(100'000, rs, {0, 2});
  const auto b = correlation(100'000, rs, {2, 0});
  CHECK(a.sum == b.sum);
  CHECK(a.window == b.window);
}

TEST_CASE("sign pattern counts") {
  const ResidueSet rs(4, {3});
  {  // k = 1 over n <= 8: five +1 and three -1
    const auto c = sign_pattern_counts(8, rs, 1);
    REQUIRE(c.size() == 2);
    CHECK(c[1] == 5);  // bit set = +1
    CHECK(c[0] == 3);
  }
  for (uint32_t k = 1; k <= 4; ++k) {
    const auto c = sign_pattern_counts(1000, rs, k);
    REQUIRE(c.size() == (size_t{1} << k));
    CHECK(std::accumulate(c.begin(), c.end(), uint64_t{0}) == 1000 - k + 1);
  }
  CHECK_THROWS_AS(sign_pattern_counts(1000, rs, 0), std::domain_error);
  CHECK_THROWS_AS(sign_pattern_counts(1000, rs, 5), std::domain_error);
}

TEST_CASE("classical lambda restricted to a progression") {
  CHECK(classical_lambda_restricted(1'000'000, 4, 1) == 172);
  // multiples of 4 up to 16: lambda(4)+lambda(8)+lambda(12)+lambda(16)
  //                        = +1 -1 -1 +1 = 0
  CHECK(classical_lambda_restricted(16, 4, 0) == 0);
  // all classes partition the full sum
  int64_t total = 0;
  for (uint32_t p = 0; p < 4; ++p)
    total += classical_lambda_restricted(10'000, 4, p);
  int64_t direct = 0;
  for (uint64_t n = 1; n <= 10'000; ++n) direct += lambda_classical(n);
  CHECK(total == direct);
}

TEST_CASE("prime harmonic sums along a progression") {
  {  // primes = 3 (mod 4) up to 10: 3 and 7
    const auto m = mertens_ap(10, 4, 3);
    CHECK(std::fabs(m.sum - 0.47619047619047616) <= 1e-15);
  }
  {
    const auto m = mertens_ap(1'000'000, 4, 1);
    CHECK(std::fabs(m.sum - 1.0261744796404435) <= 1e-12);
    CHECK(std::fabs(m.g_estimate - (-0.28672147759756195)) <= 1e-12);
    // the constant estimate should be nearly flat between ranges
    const auto m2 = mertens_ap(10'000'000, 4, 1);
    CHECK(std::fabs(m2.g_estimate - m.g_estimate) < 5e-4);
  }
  CHECK_THROWS_AS(mertens_ap(2, 4, 1), std::domain_error);
}
