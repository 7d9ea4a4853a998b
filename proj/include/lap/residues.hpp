#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lap {

// A modulus q >= 2 together with a nonempty set of distinct residues in
// [0, q).  Residue 0 names the class of multiples of q, so {q=2, {0}} selects
// the single prime 2 while {q=2, {1}} selects every odd prime.
struct ResidueSet {
  uint32_t modulus = 0;
  std::vector<uint32_t> residues;  // sorted ascending, no duplicates

  ResidueSet() = default;
  // Normalizes (sorts, checks range/duplicates).  Throws std::domain_error on
  // modulus < 2, an empty set, a residue >= modulus, or a duplicate residue.
  ResidueSet(uint32_t q, std::vector<uint32_t> rs);

  bool contains(uint32_t r) const;
  // True iff every residue class consists of integers coprime to the modulus
  // (class 0 never qualifies since it carries gcd = modulus).
  bool all_coprime() const;
  // "q=5;set=1,2" — the residue-set part of a series label.
  std::string label_fragment() const;

  bool operator==(const ResidueSet&) const = default;
};

uint32_t euler_phi(uint32_t n);

}  // namespace lap
