#include "lap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lap/arith.hpp"
#include "lap/primes.hpp"
#include "lap/sieve.hpp"

namespace lap {

namespace {

constexpr uint64_t kBlock = uint64_t{1} << 22;

// Serial pass over [1, xmax] feeding f(n, lambda(n;q,R)) in order.
template <class F>
void stream_lambda(uint64_t xmax, const ResidueSet& rs, F&& f) {
  const auto primes = base_primes(isqrt_u64(xmax));
  BlockCounts bc;
  SieveScratch scratch;
  std::vector<int8_t> lam(static_cast<size_t>(std::min(kBlock, xmax)));
  for (uint64_t lo = 1; lo <= xmax; lo += kBlock) {
    const uint64_t hi = std::min(lo + kBlock, xmax + 1);
    sieve_block_into(bc, lo, hi, rs.modulus, primes, scratch);
    lambda_from_counts(bc, rs, lam.data());
    for (uint64_t i = 0; i < hi - lo; ++i) f(lo + i, lam[i]);
  }
}

// Serial pass feeding the per-class factor count of n (distinct primes, or
// with multiplicity).
template <class F>
void stream_class_counts(uint64_t xmax, uint32_t q, uint32_t a,
                         bool with_multiplicity, F&& f) {
  if (q < 2 || a >= q)
    throw std::domain_error("class counts: need q >= 2 and 0 <= a < q");
  const auto primes = base_primes(isqrt_u64(xmax));
  BlockCounts bc;
  SieveScratch scratch;
  for (uint64_t lo = 1; lo <= xmax; lo += kBlock) {
    const uint64_t hi = std::min(lo + kBlock, xmax + 1);
    sieve_block_into(bc, lo, hi, q, primes, scratch);
    const uint8_t* src =
        (with_multiplicity ? bc.mult : bc.distinct).data() + a;
    for (uint64_t i = 0; i < hi - lo; ++i, src += q) f(lo + i, *src);
  }
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

}  // namespace

std::vector<uint64_t> omega_value_counts(uint64_t x, uint32_t q, uint32_t a,
                                         bool with_multiplicity) {
  if (x < 1) throw std::domain_error("omega_value_counts: x must be >= 1");
  std::vector<uint64_t> counts;
  stream_class_counts(x, q, a, with_multiplicity, [&](uint64_t, uint8_t v) {
    if (counts.size() <= v) counts.resize(v + 1, 0);
    ++counts[v];
  });
  return counts;
}

OmegaSumIdentity omega_sum_identity(uint64_t x, uint32_t q, uint32_t a) {
  if (x < 1) throw std::domain_error("omega_sum_identity: x must be >= 1");
  OmegaSumIdentity r;
  stream_class_counts(x, q, a, false, [&](uint64_t, uint8_t v) { r.lhs += v; });
  for_each_prime(x, [&](uint64_t p) {
    if (p % q == a) r.rhs += x / p;
  });
  return r;
}

OmegaMoments omega_moments(uint64_t x, uint32_t q, uint32_t a) {
  if (x < 3) throw std::domain_error("omega_moments: x must be >= 3");
  uint64_t s1 = 0, s2 = 0;
  stream_class_counts(x, q, a, false, [&](uint64_t, uint8_t v) {
    s1 += v;
    s2 += static_cast<uint64_t>(v) * v;
  });
  OmegaMoments m;
  const double n = static_cast<double>(x);
  const double c = std::log(std::log(n)) / euler_phi(q);
  m.mean = static_cast<double>(s1) / n;
  m.centered_second_moment =
      static_cast<double>(s2) / n - 2.0 * c * static_cast<double>(s1) / n +
      c * c;
  m.loglog_x_over_phi = c;
  return m;
}

ErdosKacHistogram erdos_kac_histogram(uint64_t x, uint32_t q, uint32_t a,
                                      std::vector<double> edges) {
  if (x < 1000)
    throw std::domain_error("erdos_kac_histogram: x must be >= 1000");
  if (edges.empty())
    for (double e = -4.0; e <= 4.0 + 1e-12; e += 0.5) edges.push_back(e);
  for (size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i - 1] < edges[i]))
      throw std::domain_error("erdos_kac_histogram: edges must increase");

  const std::vector<uint64_t> counts = omega_value_counts(x, q, a, false);
  const double c = std::log(std::log(static_cast<double>(x))) / euler_phi(q);
  const double sigma = std::sqrt(c);

  ErdosKacHistogram h;
  h.edges = edges;
  h.mass.assign(edges.size() + 1, 0.0);
  h.total = x;
  for (size_t k = 0; k < counts.size(); ++k) {
    if (!counts[k]) continue;
    const double t = (static_cast<double>(k) - c) / sigma;
    const size_t bin = static_cast<size_t>(
        std::lower_bound(edges.begin(), edges.end(), t) - edges.begin());
    h.mass[bin] += static_cast<double>(counts[k]);
  }
  for (double& m : h.mass) m /= static_cast<double>(x);

  double ks = 0, ecdf_below = 0;
  for (size_t j = 0; j < edges.size(); ++j) {
    ecdf_below += h.mass[j];  // mass at standardized values <= edges[j]
    ks = std::max(ks, std::abs(ecdf_below - normal_cdf(edges[j])));
  }
  h.ks = ks;
  return h;
}

CorrelationResult correlation(uint64_t xmax, const ResidueSet& rs,
                              std::vector<uint32_t> shifts) {
  if (shifts.empty()) throw std::domain_error("correlation: no shifts");
  std::sort(shifts.begin(), shifts.end());
  for (size_t i = 1; i < shifts.size(); ++i)
    if (shifts[i] == shifts[i - 1])
      throw std::domain_error("correlation: shifts must be distinct");
  const uint64_t maxsh = shifts.back();
  if (xmax <= maxsh)
    throw std::domain_error("correlation: window is empty");
  const uint64_t window = xmax - maxsh;

  const uint64_t ring_size = maxsh + 1;
  std::vector<int8_t> ring(ring_size, 0);
  int64_t sum = 0;
  stream_lambda(xmax, rs, [&](uint64_t n, int8_t lam) {
    ring[n % ring_size] = lam;
    if (n <= maxsh) return;  // window for base m = n - maxsh not full yet
    const uint64_t m = n - maxsh;
    if (m > window) return;
    int prod = 1;
    for (uint32_t h : shifts) prod *= ring[(m + h) % ring_size];
    sum += prod;
  });
  CorrelationResult r;
  r.sum = sum;
  r.window = window;
  r.normalized = static_cast<double>(sum) / static_cast<double>(window);
  return r;
}

std::vector<uint64_t> sign_pattern_counts(uint64_t xmax, const ResidueSet& rs,
                                          uint32_t k) {
  if (k < 1 || k > 4)
    throw std::domain_error("sign_pattern_counts: need 1 <= k <= 4");
  if (xmax < k)
    throw std::domain_error("sign_pattern_counts: xmax smaller than window");
  std::vector<uint64_t> counts(size_t{1} << k, 0);
  const uint64_t ring_size = k;
  std::vector<int8_t> ring(ring_size, 0);
  stream_lambda(xmax, rs, [&](uint64_t n, int8_t lam) {
    ring[n % ring_size] = lam;
    if (n < k) return;
    const uint64_t m = n - (k - 1);
    uint32_t idx = 0;  // most significant bit = value at the window start
    for (uint32_t j = 0; j < k; ++j)
      idx = (idx << 1) | (ring[(m + j) % ring_size] > 0 ? 1u : 0u);
    ++counts[idx];
  });
  return counts;
}

int64_t classical_lambda_restricted(uint64_t x, uint32_t Q, uint32_t P) {
  if (Q < 2 || P >= Q)
    throw std::domain_error("restricted sum: need Q >= 2 and 0 <= P < Q");
  if (x < 1) throw std::domain_error("restricted sum: x must be >= 1");
  const auto primes = base_primes(isqrt_u64(x));
  BlockCounts bc;
  SieveScratch scratch;
  int64_t sum = 0;
  for (uint64_t lo = 1; lo <= x; lo += kBlock) {
    const uint64_t hi = std::min(lo + kBlock, x + 1);
    sieve_block_into(bc, lo, hi, 1, primes, scratch);
    uint32_t r = static_cast<uint32_t>(lo % Q);
    const uint8_t* omega = bc.mult.data();  // modulus 1: one counter per n
    for (uint64_t i = 0; i < hi - lo; ++i) {
      if (r == P) sum += (omega[i] & 1) ? -1 : 1;
      if (++r == Q) r = 0;
    }
  }
  return sum;
}

MertensResult mertens_ap(uint64_t x, uint32_t q, uint32_t a) {
  if (x < 3) throw std::domain_error("mertens_ap: x must be >= 3");
  if (q < 2 || a >= q)
    throw std::domain_error("mertens_ap: need q >= 2 and 0 <= a < q");
  MertensResult r;
  for_each_prime(x, [&](uint64_t p) {
    if (p % q == a) r.sum += 1.0 / static_cast<double>(p);
  });
  r.g_estimate =
      r.sum - std::log(std::log(static_cast<double>(x))) / euler_phi(q);
  return r;
}

}  // namespace lap
