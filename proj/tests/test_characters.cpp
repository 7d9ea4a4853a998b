#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lap/arith.hpp"
#include "lap/characters.hpp"

using namespace lap;

TEST_CASE("unit group presentations") {
  {
    const UnitGroup g = unit_group(4);
    CHECK(g.generators == std::vector<uint32_t>{3});
    CHECK(g.orders == std::vector<uint32_t>{2});
    CHECK(g.units == std::vector<uint32_t>{1, 3});
  }
  {
    const UnitGroup g = unit_group(5);
    CHECK(g.generators == std::vector<uint32_t>{2});
    CHECK(g.orders == std::vector<uint32_t>{4});
  }
  {
    const UnitGroup g = unit_group(8);
    CHECK(g.generators == std::vector<uint32_t>{7, 5});
    CHECK(g.orders == std::vector<uint32_t>{2, 2});
  }
  {
    const UnitGroup g = unit_group(12);
    CHECK(g.generators == std::vector<uint32_t>{7, 5});
    CHECK(g.orders == std::vector<uint32_t>{2, 2});
  }
}

TEST_CASE("decompose reconstructs every unit, q <= 60") {
  for (uint32_t q = 2; q <= 60; ++q) {
    const UnitGroup g = unit_group(q);
    uint64_t order_prod = 1;
    for (uint32_t o : g.orders) order_prod *= o;
    CHECK(order_prod == euler_phi(q));
    for (uint32_t a : g.units) {
      const auto e = g.decompose(a);
      REQUIRE(e.size() == g.generators.size());
      uint64_t v = 1;
      for (size_t i = 0; i < e.size(); ++i) {
        CHECK(e[i] < g.orders[i]);
        for (uint32_t k = 0; k < e[i]; ++k) v = v * g.generators[i] % q;
      }
      CHECK(v == a);
    }
    if (q > 2) CHECK_THROWS_AS(g.decompose(0), std::domain_error);
  }
}

TEST_CASE("real character counts") {
  CHECK(enumerate_real_characters(4).size() == 2);
  CHECK(enumerate_real_characters(5).size() == 2);
  CHECK(enumerate_real_characters(8).size() == 4);
  CHECK(enumerate_real_characters(12).size() == 4);
  CHECK(enumerate_real_characters(2).size() == 1);  // trivial group
  CHECK(enumerate_real_characters(9).size() == 2);
}

TEST_CASE("characters are multiplicative and zero off units, q <= 100") {
  for (uint32_t q = 2; q <= 100; ++q) {
    const auto chars = enumerate_real_characters(q);
    CHECK(chars[0].is_principal());
    for (const auto& chi : chars) {
      for (uint32_t a = 0; a < q; ++a) {
        const bool unit = std::gcd(a == 0 ? q : a, q) == 1;
        CHECK((chi.values[a] != 0) == unit);
        for (uint32_t b = 0; b < q; ++b)
          CHECK(chi.values[uint64_t(a) * b % q] ==
                chi.values[a] * chi.values[b]);
      }
    }
    // pairwise distinct
    for (size_t i = 0; i < chars.size(); ++i)
      for (size_t j = i + 1; j < chars.size(); ++j)
        CHECK(!(chars[i] == chars[j]));
  }
}

TEST_CASE("minus sets of the named characters") {
  {
    const auto chars = enumerate_real_characters(4);
    CHECK(character_like_set(chars[1]).residues == std::vector<uint32_t>{3});
    CHECK_THROWS_AS(character_like_set(chars[0]), std::domain_error);
  }
  {
    const auto chars = enumerate_real_characters(5);
    CHECK(character_like_set(chars[1]).residues ==
          std::vector<uint32_t>{2, 3});  // quadratic residues are {1,4}
  }
  {
    bool found = false;
    for (const auto& chi : enumerate_real_characters(12)) {
      if (chi.is_principal()) continue;
      if (character_like_set(chi).residues == std::vector<uint32_t>{7, 11})
        found = true;
    }
    CHECK(found);  // the character with values 1,1,-1,-1 on 1,5,7,11
  }
}

TEST_CASE("minus sets have size phi(q)/2 and round-trip, q <= 60") {
  for (uint32_t q = 3; q <= 60; ++q) {
    for (const auto& chi : enumerate_real_characters(q)) {
      if (chi.is_principal()) continue;
      const ResidueSet rs = character_like_set(chi);
      CHECK(rs.residues.size() == euler_phi(q) / 2);
      const auto back = is_character_like(rs);
      REQUIRE(back.has_value());
      CHECK(*back == chi);
    }
  }
}

TEST_CASE("character likeness of specific sets") {
  CHECK(is_character_like(ResidueSet(4, {3})).has_value());
  CHECK(!is_character_like(ResidueSet(4, {1})).has_value());
  CHECK(!is_character_like(ResidueSet(5, {1, 2})).has_value());
  CHECK(is_character_like(ResidueSet(5, {2, 3})).has_value());
  CHECK(!is_character_like(ResidueSet(4, {2})).has_value());  // not coprime
  CHECK(!is_character_like(ResidueSet(8, {1, 3, 5})).has_value());  // size
}

TEST_CASE("lambda for the minus set tracks the character on units") {
  const auto chi4 = enumerate_real_characters(4)[1];
  const ResidueSet rs(4, {3});
  CHECK(chi4(2) == 0);
  CHECK(lambda_ap(2, rs) == 1);  // 2 is outside every class of rs
  for (uint64_t n = 1; n <= 10'000; n += 2)
    CHECK(lambda_ap(n, rs) == chi4(n));
}

TEST_CASE("L values at the benchmark points") {
  const auto chi4 = enumerate_real_characters(4)[1];
  CHECK(std::fabs(l_value(chi4, 0.5) - 0.6677) <= 5e-4);
  CHECK(std::fabs(l_value(chi4, 0.5) - 0.6676914571896092) <= 1e-9);
  const double pi = 3.14159265358979323846;
  CHECK(std::fabs(l_value(chi4, 1.0) - pi / 4) <= 1e-6);

  const auto chi3 = enumerate_real_characters(3)[1];
  CHECK(std::fabs(l_value(chi3, 1.0) - 0.6045997880780726) <= 1e-9);

  const auto chi5 = enumerate_real_characters(5)[1];
  const double l5 = l_value(chi5, 0.5);
  CHECK(l5 > 0);
  CHECK(std::fabs(l5 - 0.23175094750401576) <= 1e-9);

  // value at s = 2 (Catalan's constant for chi4)
  CHECK(std::fabs(l_value(chi4, 2.0) - 0.9159655941772190) <= 1e-9);
}

TEST_CASE("L value domain guards and stability") {
  const auto chars = enumerate_real_characters(4);
  CHECK_THROWS_AS(l_value(chars[0], 1.0), std::domain_error);  // principal
  CHECK_THROWS_AS(l_value(chars[1], 0.0), std::domain_error);
  CHECK_THROWS_AS(l_value(chars[1], -1.0), std::domain_error);
  CHECK_THROWS_AS(l_value(chars[1], 2.5), std::domain_error);
  for (double s : {0.3, 0.5, 1.0, 1.7}) {
    const double a = l_value(chars[1], s, 1e-8);
    const double b = l_value(chars[1], s, 5e-9);
    CHECK(std::fabs(a - b) <= 1e-8);
  }
}
