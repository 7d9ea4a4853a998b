#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lap/residues.hpp"

namespace lap {

// (Z/qZ)* presented by independent cyclic generators: the 2-part generators
// first (none for 2, one for 4, the pair {2^e-1, 5} for 2^e with e >= 3),
// then one generator per odd prime power factor, primes ascending.  The
// product of the generator orders is phi(q).
struct UnitGroup {
  uint32_t modulus = 0;
  std::vector<uint32_t> generators;
  std::vector<uint32_t> orders;
  std::vector<uint32_t> units;  // all a in [1, q), gcd(a, q) = 1, ascending

  // Exponent vector of a unit on the generators; throws std::domain_error
  // when gcd(a, modulus) != 1.
  std::vector<uint32_t> decompose(uint32_t a) const;
};

UnitGroup unit_group(uint32_t q);  // q >= 2

// A real Dirichlet character mod q as its full value table:
// values[n % q] in {-1, 0, +1}, zero exactly off the units.
struct DirichletCharacter {
  uint32_t modulus = 0;
  std::vector<int8_t> values;

  int operator()(uint64_t n) const { return values[n % modulus]; }
  bool is_principal() const;
  bool operator==(const DirichletCharacter&) const = default;
};

// All real characters mod q (there are 2^t of them, t = number of independent
// order-2 quotients).  Principal character first, the rest sorted by value
// table; built as products of the local real characters at each prime power.
std::vector<DirichletCharacter> enumerate_real_characters(uint32_t q);

// The residue classes where chi = -1; always phi(q)/2 classes for a real
// non-principal chi.  Throws std::domain_error for the principal character.
ResidueSet character_like_set(const DirichletCharacter& chi);

// If lambda(.;q,R) restricted to units agrees with some real non-principal
// character (i.e. R is exactly that character's -1 set), returns it.
// Returns nullopt otherwise, including for sets with non-coprime classes.
std::optional<DirichletCharacter> is_character_like(const ResidueSet& rs);

// L(s, chi) for real non-principal chi and 0 < s <= 2, via q^{-s} times the
// chi-weighted Hurwitz zeta values zeta(s, a/q) (Euler-Maclaurin with
// certified remainder), and the digamma formula at the s = 1 pole cancel.
// Absolute error at most tol (floored at 1e-12).  Throws std::domain_error
// for the principal character or s outside (0, 2].
double l_value(const DirichletCharacter& chi, double s, double tol = 1e-10);

}  // namespace lap
