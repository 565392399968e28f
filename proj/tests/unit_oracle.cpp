#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptroots/fppoly.hpp"
#include "ptroots/oracle.hpp"

using namespace ptroots;

TEST_CASE("brute force counting") {
  CHECK(brute_force_count({0, 0, 1}, PrimePowerModulus(3, 2)) == 3);
  CHECK(brute_force_count({5, 0, 1}, PrimePowerModulus(5, 2)) == 0);
  CHECK(brute_force_count({0, 0, 1}, PrimePowerModulus(5, 3)) == 5);
  CHECK(brute_force_count({}, PrimePowerModulus(2, 3)) == 8);
  CHECK(brute_force_count({0}, PrimePowerModulus(2, 3)) == 8);
  CHECK(brute_force_count({1}, PrimePowerModulus(2, 3)) == 0);
  CHECK(brute_force_count({-1, 0, 1}, PrimePowerModulus(2, 3)) == 4);
  // coefficients reduce mod p^t first: 8x = 0 over Z/8
  CHECK(brute_force_count({0, 8}, PrimePowerModulus(2, 3)) == 8);
}

TEST_CASE("raised budget unlocks larger moduli") {
  // 101^4 = 104060401 points is above the default budget
  PrimePowerModulus m(101, 4);
  CHECK_THROWS_AS(brute_force_count({0, 0, 1}, m), BudgetExceededError);
  OracleBudget b;
  b.max_points = 200'000'000UL;
  CHECK(brute_force_count({0, 0, 1}, m, b) == 101 * 101);
}

TEST_CASE("budget guard") {
  PrimePowerModulus m(mpz_class("2147483647"), 2);
  CHECK_THROWS_AS(brute_force_count({0, 1}, m), BudgetExceededError);
}

TEST_CASE("oracle agrees with the t=1 split part degree") {
  for (long p : {2, 3, 5, 7, 11}) {
    PrimePowerModulus m(p, 1);
    for (int c0 = 0; c0 < p; ++c0) {
      for (int c1 = 0; c1 < p; ++c1) {
        std::vector<mpz_class> cs{c0, c1, 1};
        FpPolynomial f(p, cs);
        int d = split_part(f).degree();
        CHECK(brute_force_count(cs, m) == (d > 0 ? d : 0));
      }
    }
  }
}

TEST_CASE("system enumeration") {
  PrimePowerModulus m(5, 1);
  // frozen example: x1 in {1,4}, x2 constrained by the lex basis
  ZptPolynomial e0(m, 2), e1(m, 2), e2(m, 2);
  e0.add_term({2, 0}, 1);
  e0.add_term({0, 0}, 4);
  e1.add_term({1, 1}, 1);
  e1.add_term({1, 0}, 4);
  e1.add_term({0, 1}, 1);
  e1.add_term({0, 0}, 4);
  e2.add_term({0, 2}, 1);
  e2.add_term({0, 0}, 4);
  auto pts = enumerate_system({e0, e1, e2}, 2, 5);
  std::vector<std::vector<mpz_class>> expect{{1, 1}, {4, 1}, {4, 4}};
  CHECK(pts == expect);

  // unsatisfiable: nonzero constant
  CHECK(enumerate_system({ZptPolynomial::constant(m, 2, 1)}, 2, 5).empty());

  // both axes pinned at zero
  PrimePowerModulus m3(3, 1);
  auto zero_pt = enumerate_system({ZptPolynomial::variable(m3, 2, 0),
                                   ZptPolynomial::variable(m3, 2, 1)},
                                  2, 3);
  REQUIRE(zero_pt.size() == 1);
  CHECK(zero_pt[0] == std::vector<mpz_class>{0, 0});

  // empty generator family: the whole grid, lexicographically sorted
  auto grid = enumerate_system({}, 2, 3);
  CHECK(grid.size() == 9);
  CHECK(std::is_sorted(grid.begin(), grid.end()));

  // grid budget guard
  OracleBudget tight;
  tight.max_points = 8;
  CHECK_THROWS_AS(enumerate_system({}, 2, 3, tight), BudgetExceededError);
}

TEST_CASE("lower-arity generators read the point prefix") {
  PrimePowerModulus m(3, 1);
  ZptPolynomial g1 = ZptPolynomial::variable(m, 1, 0);  // x1 = 0, arity 1
  auto pts = enumerate_system({g1}, 2, 3);
  REQUIRE(pts.size() == 3);
  for (const auto& pt : pts) CHECK(pt[0] == 0);
}
