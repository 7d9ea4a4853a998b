#include "lap/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lap/arith.hpp"
#include "lap/characters.hpp"
#include "lap/primes.hpp"
#include "lap/sieve.hpp"

namespace lap {

Rational::Rational(int64_t n, int64_t d) : num(n), den(d) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator*(const Rational& o) const {
  const int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
  const int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}

double Rational::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

uint32_t explicit_l43(uint64_t x) {
  uint32_t total = 0;
  while (x) {
    const uint32_t r = x & 3;
    total += (r == 1 || r == 2);
    x >>= 1;
  }
  return total;
}

ConvolutionCheck chi4_convolution_check(uint64_t x) {
  if (x < 1) throw std::domain_error("convolution check: x must be >= 1");
  if (x > 20'000'000)
    throw std::domain_error("convolution check: x capped at 2*10^7");
  // lambda4(n) = lambda(n;4,1) for n = 1..x via one serial sieve pass.
  const ResidueSet cls(4, {1});
  const auto primes = base_primes(isqrt_u64(x));
  std::vector<int8_t> lam(x + 1, 0);
  {
    BlockCounts bc;
    SieveScratch scratch;
    constexpr uint64_t kBlock = uint64_t{1} << 22;
    for (uint64_t lo = 1; lo <= x; lo += kBlock) {
      const uint64_t hi = std::min(lo + kBlock, x + 1);
      sieve_block_into(bc, lo, hi, 4, primes, scratch);
      lambda_from_counts(bc, cls, lam.data() + lo);
    }
  }
  // Prefix sums of lambda4 over odd arguments: podd[(m-1)/2] = sum over odd
  // m' <= m.
  std::vector<int32_t> podd((x + 1) / 2);
  {
    int32_t acc = 0;
    for (uint64_t m = 1; m <= x; m += 2) {
      acc += lam[m];
      podd[(m - 1) / 2] = acc;
    }
  }
  auto t_odd = [&](uint64_t y) -> int64_t {
    if (y < 1) return 0;
    const uint64_t m = (y & 1) ? y : y - 1;
    return podd[(m - 1) / 2];
  };
  ConvolutionCheck r;
  // Literal convolution, summed hyperbola-wise: sum over odd d of
  // chi4(d) * sum over odd e <= x/d of lambda4(e).
  for (uint64_t d = 1; d <= x; d += 2) {
    const int chi = (d % 4 == 1) ? 1 : -1;
    r.lhs += chi * t_odd(x / d);
  }
  r.rhs = static_cast<int64_t>((isqrt_u64(x) + 1) / 2);
  return r;
}

Rational product_constant(uint32_t q, const std::vector<uint32_t>& residues) {
  if (q < 2) throw std::domain_error("product constant: modulus must be >= 2");
  std::vector<uint32_t> rs = residues;
  std::sort(rs.begin(), rs.end());
  for (size_t i = 0; i < rs.size(); ++i) {
    if (rs[i] >= q)
      throw std::domain_error("product constant: residue out of range");
    if (i && rs[i] == rs[i - 1])
      throw std::domain_error("product constant: duplicate residue");
  }
  Rational prod(1, 1);
  for (uint32_t b : rs) {
    const uint32_t d = std::gcd(b == 0 ? q : b, q);
    if (d == 1)
      throw std::domain_error(
          "product constant: residue class coprime to the modulus");
    // The class b mod q holds at most the single prime d, present exactly
    // when d is prime and d = b (mod q).
    if (is_prime(d) && d % q == b)
      prod = prod * Rational(static_cast<int64_t>(d) - 1,
                             static_cast<int64_t>(d) + 1);
  }
  return prod;
}

Rational sifting_density(const ResidueSet& rs) {
  uint32_t coprime = 0;
  for (uint32_t r : rs.residues)
    if (std::gcd(r == 0 ? rs.modulus : r, rs.modulus) == 1) ++coprime;
  return Rational(coprime, euler_phi(rs.modulus));
}

AsymptoticPrediction predicted_asymptote(const ResidueSet& rs) {
  if (!rs.all_coprime())
    throw std::domain_error(
        "predicted_asymptote: residues must be coprime to the modulus");
  const uint32_t phi = euler_phi(rs.modulus);
  const uint32_t r = static_cast<uint32_t>(rs.residues.size());
  AsymptoticPrediction p;
  p.log_exponent_exact =
      Rational(2 * static_cast<int64_t>(r) - 2 * static_cast<int64_t>(phi), phi);
  p.log_exponent = p.log_exponent_exact.to_double();
  if (2 * r < phi) {
    p.sign_of_b0 = SignPrediction::plus;
  } else if (2 * r > phi) {
    p.sign_of_b0 = SignPrediction::minus;
  } else {
    p.sign_of_b0 = SignPrediction::not_applicable;
    if (is_character_like(rs)) {
      p.r_half_class = RHalfClass::character_like;
      p.power_exponent = 0;  // O(log x) regime
      p.log_exponent = 1;
    } else {
      std::vector<uint32_t> complement;
      for (uint32_t a = 1; a < rs.modulus; ++a)
        if (std::gcd(a, rs.modulus) == 1 && !rs.contains(a))
          complement.push_back(a);
      if (!complement.empty() &&
          is_character_like(ResidueSet(rs.modulus, complement))) {
        p.r_half_class = RHalfClass::complement_of_character_like;
        p.power_exponent = 0.5;  // sqrt regime from the zeta(2s)/L pole
        p.log_exponent = 0;
      } else {
        p.r_half_class = RHalfClass::neither;
      }
    }
  }
  return p;
}

GapsConstants gaps_constants() {
  GapsConstants g;
  const double tail = 1.0 / (2.0 * (1.0 - std::pow(2.0, -0.5)));
  g.c = (1.0 + 1.0 / std::sqrt(3.0)) * tail;
  g.c_refined = (1.0 + 1.0 / std::sqrt(3.0) - 1.0 / std::sqrt(5.0) +
                 1.0 / std::sqrt(7.0)) *
                tail;
  return g;
}

double gaps_partial_sum(uint32_t kmax) {
  double s = 0;
  for (uint32_t k = 0; k <= kmax; ++k) s += std::pow(2.0, -0.5 * k - 1.0);
  return (1.0 + 1.0 / std::sqrt(3.0)) * s;
}

namespace {

struct FitPoints {
  std::vector<double> g, v;
  uint64_t x_lo = 0, x_hi = 0;
};

template <class Weight>
FitPoints gather(const SummatorySeries& s, uint64_t x_lo, uint64_t x_hi,
                 Weight&& w) {
  FitPoints pts;
  for (const GridPoint& c : s.checkpoints) {
    if (c.x < x_lo || c.x > x_hi) continue;
    const double g = w(static_cast<double>(c.x));
    if (!std::isfinite(g)) continue;  // x = 1 under a negative log exponent
    pts.g.push_back(g);
    pts.v.push_back(static_cast<double>(c.value));
    if (pts.x_lo == 0) pts.x_lo = c.x;
    pts.x_hi = c.x;
  }
  if (pts.g.empty())
    throw std::domain_error("fit: no checkpoints in the requested range");
  return pts;
}

FitResult least_squares(const FitPoints& pts, std::string model) {
  double num = 0, den = 0;
  for (size_t i = 0; i < pts.g.size(); ++i) {
    num += pts.v[i] * pts.g[i];
    den += pts.g[i] * pts.g[i];
  }
  const double c = num / den;
  double rss = 0;
  for (size_t i = 0; i < pts.g.size(); ++i) {
    const double e = pts.v[i] - c * pts.g[i];
    rss += e * e;
  }
  FitResult f;
  f.model = std::move(model);
  f.coefficients = {c};
  f.residual_norm = std::sqrt(rss);
  f.x_lo = pts.x_lo;
  f.x_hi = pts.x_hi;
  f.points = pts.g.size();
  f.sqrt_prediction = std::numeric_limits<double>::quiet_NaN();
  return f;
}

}  // namespace

FitResult sqrt_coefficient(const SummatorySeries& s, uint64_t x_lo,
                           uint64_t x_hi) {
  FitResult f = least_squares(
      gather(s, x_lo, x_hi, [](double x) { return std::sqrt(x); }),
      "value ~ c*sqrt(x)");
  // Reference coefficient for the (q=4, {1}) series.
  const auto chars = enumerate_real_characters(4);
  f.sqrt_prediction =
      (1.0 + std::pow(2.0, -0.5)) / l_value(chars.back(), 0.5);
  return f;
}

FitResult log_power_fit(const SummatorySeries& s, double power_exponent,
                        double log_exponent, uint64_t x_lo, uint64_t x_hi) {
  char model[96];
  std::snprintf(model, sizeof model, "value ~ b0*x^%g*(log x)^%g",
                power_exponent, log_exponent);
  return least_squares(
      gather(s, x_lo, x_hi,
             [&](double x) {
               return std::pow(x, power_exponent) *
                      std::pow(std::log(x), log_exponent);
             }),
      model);
}

}  // namespace lap
