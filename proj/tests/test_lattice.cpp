#include <random>
#include <stdexcept>

#include "doctest.h"
#include "iplr/lattice.hpp"

using namespace iplr;

namespace {

PolyLatticeRule tiny_rule(std::vector<uint64_t> q_encs) {
  std::vector<Poly> q;
  for (uint64_t e : q_encs) q.push_back(poly_from_int(e, 2));
  return PolyLatticeRule(2, 2, poly_from_int(7, 2), std::move(q));
}

uint64_t ipow_u64(uint32_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("the four-point rule produces its known coordinates") {
  const PointSet one_col = generate_lattice_points(tiny_rule({1}));
  CHECK(one_col.rows() == 4);
  CHECK(one_col.cols() == 1);
  CHECK(one_col.digits() == 2);
  CHECK(one_col.numerators() == std::vector<uint64_t>{0, 1, 3, 2});

  const PointSet x_col = generate_lattice_points(tiny_rule({2}));
  CHECK(x_col.numerators() == std::vector<uint64_t>{0, 3, 2, 1});

  const PointSet both = generate_lattice_points(tiny_rule({1, 2}));
  CHECK(both.cols() == 2);
  for (uint64_t n = 0; n < 4; ++n) {
    CHECK(both.numerator(n, 0) == one_col.numerator(n, 0));
    CHECK(both.numerator(n, 1) == x_col.numerator(n, 0));
  }
}

TEST_CASE("rule construction rejects mismatched pieces") {
  const Poly p7 = poly_from_int(7, 2);
  CHECK(tiny_rule({1, 2}).point_count() == 4);
  CHECK(tiny_rule({1, 2}).s_total() == 2);
  CHECK_THROWS_WITH_AS(PolyLatticeRule(2, 2, p7, {}),
                       "empty generating vector", std::invalid_argument);
  CHECK_THROWS_WITH_AS(PolyLatticeRule(2, 3, p7, {poly_from_int(1, 2)}),
                       "modulus degree must equal m", std::invalid_argument);
  CHECK_THROWS_WITH_AS(PolyLatticeRule(2, 2, p7, {poly_from_int(4, 2)}),
                       "generating component degree must be < m",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(PolyLatticeRule(3, 2, p7, {poly_from_int(1, 3)}),
                       "mixed coefficient fields", std::invalid_argument);
  CHECK_THROWS_AS(PolyLatticeRule(4, 2, poly_from_int(21, 4), {}),
                  std::invalid_argument);
}

TEST_CASE("residue tables match the expansion computed from scratch") {
  for (uint32_t b : {2u, 3u}) {
    const Poly p = find_irreducible(3, b);
    const Poly one = poly_from_int(1, b);
    const auto nums = vm_numerator_table(p, 3);
    const auto levels = vm_level_table(p, 3);
    REQUIRE(nums.size() == ipow_u64(b, 3));
    for (uint64_t r = 0; r < nums.size(); ++r) {
      const auto expansion = laurent_digits(poly_from_int(r, b), one, p, 3);
      CHECK(nums[r] == expansion.numerator());
      uint32_t level = 0;
      const auto& dg = expansion.digits();
      for (uint32_t i = 0; i < dg.size(); ++i) {
        if (dg[i] != 0) {
          level = i + 1;
          break;
        }
      }
      CHECK(levels[r] == level);
    }
    CHECK(nums[0] == 0);
    CHECK(levels[0] == 0);
  }
}

TEST_CASE("character sums are the indicator of dual membership") {
  struct Case {
    uint32_t b;
    uint32_t m;
    std::vector<uint64_t> q;
    uint64_t p_enc;  // 0 = smallest irreducible
  };
  const std::vector<Case> cases = {
      {2, 2, {1}, 0},         {2, 2, {1, 2}, 0},    {2, 3, {1, 5}, 0},
      {2, 3, {3, 6, 7}, 0},   {2, 2, {1, 3}, 5},    // reducible modulus (x+1)^2
      {3, 2, {1, 4}, 0},      {3, 2, {2, 7}, 0},
  };
  for (const Case& c : cases) {
    const Poly p = c.p_enc ? poly_from_int(c.p_enc, c.b)
                           : find_irreducible(c.m, c.b);
    std::vector<Poly> q;
    for (uint64_t e : c.q) q.push_back(poly_from_int(e, c.b));
    const PolyLatticeRule rule(c.b, c.m, p, q);
    const PointSet pts = generate_lattice_points(rule);

    const uint64_t k_max = ipow_u64(c.b, c.m + 1);  // one digit beyond m
    std::vector<uint64_t> k(c.q.size(), 0);
    uint64_t checked = 0;
    for (;;) {
      const int cs = character_sum(pts, k);
      CHECK((cs == 0 || cs == 1));
      CHECK((cs == 1) == dual_contains(rule, k));
      ++checked;
      size_t pos = 0;  // odometer over index components
      while (pos < k.size() && ++k[pos] == k_max) k[pos++] = 0;
      if (pos == k.size()) break;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("indices two digits beyond m still match dual membership") {
  const PolyLatticeRule rule = tiny_rule({1, 2});
  const PointSet pts = generate_lattice_points(rule);
  for (uint64_t k1 = 0; k1 < 16; ++k1) {
    for (uint64_t k2 = 0; k2 < 16; ++k2) {
      CHECK(character_sum(pts, {k1, k2}) ==
            (dual_contains(rule, {k1, k2}) ? 1 : 0));
    }
  }
}

TEST_CASE("a tampered point set is detected") {
  const PointSet pts = generate_lattice_points(tiny_rule({1}));
  std::vector<uint64_t> nums = pts.numerators();
  nums[2] = nums[1];  // duplicate a coordinate, breaking digit balance
  const PointSet bad(2, 2, 4, 1, nums);
  CHECK_THROWS_WITH_AS(character_sum(bad, {1}),
                       "not a digital net character sum", std::runtime_error);
  CHECK_THROWS_AS(character_sum(pts, {1, 2}), std::invalid_argument);
}

TEST_CASE("carry-free addition sums digits independently") {
  CHECK(enc_add(0b1010, 0b0110, 2) == 0b1100);
  CHECK(enc_add(5, 7, 3) == 0);       // 12_3 + 21_3 = 00_3 digitwise
  CHECK(enc_add(5, 5, 3) == 7);       // 12_3 + 12_3 = 21_3
  CHECK(enc_add(0, 9, 5) == 9);
  std::mt19937 rng(8);
  std::uniform_int_distribution<uint64_t> dist(0, 100000);
  for (int trial = 0; trial < 200; ++trial) {
    const uint64_t a = dist(rng), c = dist(rng);
    for (uint32_t b : {2u, 3u, 5u}) {
      CHECK(enc_add(a, c, b) ==
            poly_to_int(poly_add(poly_from_int(a, b), poly_from_int(c, b))));
    }
  }
}

TEST_CASE("the residue sweep tracks n*q mod p exactly") {
  for (uint32_t b : {2u, 3u}) {
    const uint32_t m = 3;
    const Poly p = find_irreducible(m, b);
    for (uint64_t q_enc : std::vector<uint64_t>{1, 2, 5, ipow_u64(b, m) - 1}) {
      const Poly q = poly_from_int(q_enc, b);
      uint64_t visited = 0;
      for_each_residue_multiple(q, p, m, [&](uint64_t n, uint64_t res) {
        CHECK(n == visited);
        CHECK(res ==
              poly_to_int(poly_mod(poly_mul(poly_from_int(n, b), q), p)));
        ++visited;
      });
      CHECK(visited == ipow_u64(b, m));
    }
  }
}

}  // TEST_SUITE lattice
