#include "lap/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lap/arith.hpp"

namespace lap {

namespace {

struct LocalFactor {
  uint32_t prime_power;  // p^e
  uint32_t prime;
  uint32_t exponent;
};

std::vector<LocalFactor> local_factors(uint32_t q) {
  std::vector<LocalFactor> out;
  uint32_t n = q;
  for (uint32_t p = 2; uint64_t{p} * p <= n; ++p) {
    if (n % p) continue;
    uint32_t pe = 1, e = 0;
    while (n % p == 0) n /= p, pe *= p, ++e;
    out.push_back({pe, p, e});
  }
  if (n > 1) out.push_back({n, n, 1});
  std::sort(out.begin(), out.end(),
            [](auto& a, auto& b) { return a.prime < b.prime; });
  return out;
}

uint32_t powmod_u32(uint32_t a, uint32_t e, uint32_t m) {
  uint64_t r = 1, b = a % m;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
  }
  return static_cast<uint32_t>(r);
}

uint32_t order_mod(uint32_t a, uint32_t m) {
  uint32_t o = 1;
  uint64_t x = a % m;
  while (x != 1) {
    x = x * (a % m) % m;
    ++o;
  }
  return o;
}

// Smallest primitive root mod odd prime power p^e: take the least primitive
// root g mod p, bumping to g + p when g^{p-1} = 1 (mod p^2) kills the lift.
uint32_t primitive_root_odd(uint32_t p, uint32_t e) {
  const uint32_t phi_p = p - 1;
  std::vector<uint32_t> prime_divs;
  {
    uint32_t m = phi_p;
    for (uint32_t d = 2; uint64_t{d} * d <= m; ++d) {
      if (m % d) continue;
      prime_divs.push_back(d);
      while (m % d == 0) m /= d;
    }
    if (m > 1) prime_divs.push_back(m);
  }
  uint32_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (uint32_t d : prime_divs)
      if (powmod_u32(g, phi_p / d, p) == 1) {
        ok = false;
        break;
      }
    if (ok) break;
  }
  if (e == 1) return g;
  const uint32_t p2 = p * p;
  if (powmod_u32(g % p2, phi_p, p2) == 1) g += p;
  return g;
}

// CRT lift: x = r (mod m), x = 1 (mod q/m); gcd(m, q/m) = 1.
uint32_t crt_lift(uint32_t r, uint32_t m, uint32_t q) {
  const uint32_t cof = q / m;
  for (uint64_t x = r; x < q; x += m)
    if (x % cof == 1 % cof) return static_cast<uint32_t>(x);
  throw std::logic_error("crt_lift: no solution");  // unreachable for valid input
}

// Real characters of (Z/p^e Z)* as value tables indexed by n mod p^e.
std::vector<std::vector<int8_t>> local_real_characters(const LocalFactor& f) {
  const uint32_t m = f.prime_power;
  auto coprime = [&](uint32_t n) { return std::gcd(n, m) == 1; };
  std::vector<std::vector<int8_t>> out;
  std::vector<int8_t> principal(m, 0);
  for (uint32_t n = 0; n < m; ++n)
    if (coprime(n)) principal[n] = 1;
  out.push_back(principal);
  if (f.prime == 2) {
    if (f.exponent >= 2) {  // chi mod 4 lift: +1 at 1 mod 4, -1 at 3 mod 4
      std::vector<int8_t> chi4(m, 0);
      for (uint32_t n = 1; n < m; n += 2) chi4[n] = (n % 4 == 1) ? 1 : -1;
      out.push_back(chi4);
    }
    if (f.exponent >= 3) {  // chi mod 8 (+1 at 1,7; -1 at 3,5) and the product
      std::vector<int8_t> chi8(m, 0), chi48(m, 0);
      for (uint32_t n = 1; n < m; n += 2) {
        const uint32_t n8 = n % 8;
        chi8[n] = (n8 == 1 || n8 == 7) ? 1 : -1;
        chi48[n] = (n8 == 1 || n8 == 3) ? 1 : -1;
      }
      out.push_back(chi8);
      out.push_back(chi48);
    }
  } else {  // odd p^e: quadratic character = Legendre symbol mod p
    std::vector<int8_t> quad(m, 0);
    for (uint32_t n = 0; n < m; ++n)
      if (coprime(n))
        quad[n] = powmod_u32(n % f.prime, (f.prime - 1) / 2, f.prime) == 1
                      ? 1
                      : -1;
    out.push_back(quad);
  }
  return out;
}

}  // namespace

UnitGroup unit_group(uint32_t q) {
  if (q < 2) throw std::domain_error("unit_group: modulus must be >= 2");
  UnitGroup g;
  g.modulus = q;
  for (uint32_t a = 1; a < q; ++a)
    if (std::gcd(a, q) == 1) g.units.push_back(a);

  for (const LocalFactor& f : local_factors(q)) {
    if (f.prime == 2) {
      if (f.exponent == 2) {
        g.generators.push_back(crt_lift(3, 4, q));
        g.orders.push_back(2);
      } else if (f.exponent >= 3) {
        g.generators.push_back(crt_lift(f.prime_power - 1, f.prime_power, q));
        g.orders.push_back(2);
        g.generators.push_back(crt_lift(5, f.prime_power, q));
        g.orders.push_back(f.prime_power / 4);
      }  // 2^1: trivial local group
    } else {
      const uint32_t root = primitive_root_odd(f.prime, f.exponent);
      g.generators.push_back(crt_lift(root % f.prime_power, f.prime_power, q));
      g.orders.push_back(f.prime_power / f.prime * (f.prime - 1));
    }
  }
  // Consistency: product of orders is phi(q), and each lifted generator has
  // exactly its local order in (Z/qZ)*.
  uint64_t prod = 1;
  for (size_t i = 0; i < g.generators.size(); ++i) {
    prod *= g.orders[i];
    if (order_mod(g.generators[i], q) != g.orders[i])
      throw std::logic_error("unit_group: generator order mismatch");
  }
  if (prod != g.units.size())
    throw std::logic_error("unit_group: order product != phi(q)");
  return g;
}

std::vector<uint32_t> UnitGroup::decompose(uint32_t a) const {
  a %= modulus;
  if (std::gcd(a, modulus) != 1)
    throw std::domain_error("decompose: not a unit");
  // Exhaustive exponent search; fine for the desk-scale moduli used here.
  std::vector<uint32_t> exps(generators.size(), 0);
  for (;;) {
    uint64_t x = 1;
    for (size_t i = 0; i < generators.size(); ++i)
      x = x * powmod_u32(generators[i], exps[i], modulus) % modulus;
    if (x == a) return exps;
    size_t i = 0;
    while (i < exps.size() && ++exps[i] == orders[i]) exps[i++] = 0;
    if (i == exps.size())
      throw std::logic_error("decompose: generators do not span the group");
  }
}

bool DirichletCharacter::is_principal() const {
  for (uint32_t n = 0; n < modulus; ++n)
    if (values[n] < 0) return false;
  return true;
}

std::vector<DirichletCharacter> enumerate_real_characters(uint32_t q) {
  if (q < 2) throw std::domain_error("characters: modulus must be >= 2");
  const auto factors = local_factors(q);
  std::vector<std::vector<std::vector<int8_t>>> locals;
  for (const auto& f : factors) locals.push_back(local_real_characters(f));

  std::vector<DirichletCharacter> out;
  std::vector<size_t> pick(locals.size(), 0);
  for (;;) {
    DirichletCharacter chi;
    chi.modulus = q;
    chi.values.assign(q, 0);
    for (uint32_t n = 0; n < q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      int v = 1;
      for (size_t i = 0; i < locals.size(); ++i)
        v *= locals[i][pick[i]][n % factors[i].prime_power];
      chi.values[n] = static_cast<int8_t>(v);
    }
    out.push_back(std::move(chi));
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == locals[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
    if (pick.empty()) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.is_principal() != b.is_principal()) return a.is_principal();
    return a.values < b.values;
  });
  return out;
}

ResidueSet character_like_set(const DirichletCharacter& chi) {
  if (chi.is_principal())
    throw std::domain_error("character_like_set: principal character has no -1 classes");
  std::vector<uint32_t> rs;
  for (uint32_t a = 0; a < chi.modulus; ++a)
    if (chi.values[a] < 0) rs.push_back(a);
  return ResidueSet(chi.modulus, std::move(rs));
}

std::optional<DirichletCharacter> is_character_like(const ResidueSet& rs) {
  if (!rs.all_coprime()) return std::nullopt;
  for (const auto& chi : enumerate_real_characters(rs.modulus)) {
    if (chi.is_principal()) continue;
    if (character_like_set(chi).residues == rs.residues) return chi;
  }
  return std::nullopt;
}

namespace {

// zeta(s, x) by Euler-Maclaurin with N leading terms and M Bernoulli
// corrections; at s = 1 the pole term is replaced by its finite part, which
// turns the sum into -digamma(x) and keeps one code path for L values.
double hurwitz_zeta_regularized(double s, double x) {
  constexpr int kLeading = 64;
  // B_{2j} for 2j = 2..20.
  static const double kB[] = {1.0 / 6,     -1.0 / 30,   1.0 / 42,
                              -1.0 / 30,   5.0 / 66,    -691.0 / 2730,
                              7.0 / 6,     -3617.0 / 510, 43867.0 / 798,
                              -174611.0 / 330};
  double sum = 0;
  for (int k = 0; k < kLeading; ++k) sum += std::pow(x + k, -s);
  const double y = x + kLeading;
  const double logy = std::log(y);
  // Finite-part pole term: expm1 keeps it stable through s -> 1, where the
  // character sum cancels the 1/(s-1) singularity exactly.
  sum += (s == 1.0) ? -logy : std::expm1((1.0 - s) * logy) / (s - 1.0);
  sum += 0.5 * std::pow(y, -s);
  double poch = s;                    // (s)(s+1)...(s+2j-2)
  double fact = 1;                    // (2j)!
  double ypow = std::pow(y, -s - 1);  // y^{-s-2j+1}
  for (int j = 1; j <= 10; ++j) {
    fact *= (2 * j - 1) * (2 * j);
    sum += kB[j - 1] / fact * poch * ypow;
    poch *= (s + 2 * j - 1) * (s + 2 * j);
    ypow /= y * y;
  }
  return sum;
}

}  // namespace

double l_value(const DirichletCharacter& chi, double s, double tol) {
  if (chi.is_principal())
    throw std::domain_error("l_value: principal character excluded");
  if (!(s > 0.0) || s > 2.0)
    throw std::domain_error("l_value: s must lie in (0, 2]");
  (void)tol;  // remainder of the expansion is ~1e-30, below any honest tol
  const uint32_t q = chi.modulus;
  double acc = 0;
  for (uint32_t a = 1; a < q; ++a) {
    const int v = chi.values[a];
    if (v == 0) continue;
    acc += v * hurwitz_zeta_regularized(s, static_cast<double>(a) / q);
  }
  // The finite-part substitution at s=1 is exact because sum chi(a) = 0.
  return std::pow(static_cast<double>(q), -s) * acc;
}

}  // namespace lap
