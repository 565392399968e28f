#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ptroots/zptpoly.hpp"

using namespace ptroots;

namespace {

ZptPolynomial univar(const PrimePowerModulus& m, std::vector<mpz_class> cs) {
  return ZptPolynomial::from_univariate(m, cs);
}

}  // namespace

TEST_CASE("term storage and canonical form") {
  PrimePowerModulus m(5, 2);
  ZptPolynomial f(m, 2);
  f.add_term({1, 0}, 30);  // reduces to 5*x1
  f.add_term({0, 1}, 24);
  f.add_term({0, 1}, 1);   // cancels to 25 = 0: term disappears
  CHECK(f.degree_in(0) == 1);
  CHECK(f.degree_in(1) == 0);
  CHECK(f.coeff({1, 0}) == 5);
  CHECK(f.coeff({0, 1}) == 0);
  CHECK(f.to_string() == "5*x1");

  ZptPolynomial z(m, 1);
  CHECK(z.is_zero());
  CHECK(z.is_constant());
  CHECK(z.constant_value() == 0);
  CHECK(z.degree_in(0) == -1);

  ZptPolynomial c = ZptPolynomial::constant(m, 3, 26);
  CHECK(c.is_constant());
  CHECK(c.constant_value() == 1);
}

TEST_CASE("arithmetic and evaluation") {
  PrimePowerModulus m(5, 2);
  ZptPolynomial x1 = ZptPolynomial::variable(m, 2, 0);
  ZptPolynomial x2 = ZptPolynomial::variable(m, 2, 1);
  ZptPolynomial f = (x1 + x2) * (x1 - x2);
  CHECK(f == x1 * x1 - x2 * x2);
  CHECK(f.eval({3, 2}) == 5);
  CHECK((-f).eval({3, 2}) == 20);
  CHECK((f * mpz_class(5)).eval({3, 2}) == 0);

  ZptPolynomial g = f.substitute(1, x1);  // x2 := x1 gives 0
  CHECK(g.is_zero());

  CHECK(f.derivative_in(0) == x1 * mpz_class(2));
  CHECK(f.derivative_in(1) == -(x2 * mpz_class(2)));
}

TEST_CASE("coefficient extraction round trip") {
  PrimePowerModulus m(7, 2);
  ZptPolynomial x1 = ZptPolynomial::variable(m, 2, 0);
  ZptPolynomial x2 = ZptPolynomial::variable(m, 2, 1);
  ZptPolynomial f = x2 * x2 * x1 + x2 * mpz_class(3) + x1 * x1;
  auto cs = f.coeffs_in(1);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0] == x1 * x1);
  CHECK(cs[1] == ZptPolynomial::constant(m, 2, 3));
  CHECK(cs[2] == x1);
  CHECK(ZptPolynomial::from_coeffs_in(1, cs) == f);
}

TEST_CASE("arity and modulus changes") {
  PrimePowerModulus m(5, 3);
  ZptPolynomial f = univar(m, {30, 7});
  ZptPolynomial w = f.with_arity(3);
  CHECK(w.arity() == 3);
  CHECK(w.with_arity(1) == f);
  CHECK(f.reduced_mod_p().modulus().exponent() == 1);
  CHECK(f.reduced_mod_p().coeff({0}) == 0);
  ZptPolynomial lifted = f.reduced_mod_p().lifted_to(m);
  CHECK(lifted.coeff({1}) == 2);
  CHECK(univar(m, {0, 0, 125}).is_zero());
}

TEST_CASE("digit substitution definition") {
  // f(x1 + p^k x2) evaluated both ways, many random univariate cases.
  std::mt19937_64 rng(42);
  const long primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 200; ++trial) {
    long p = primes[trial % 4];
    unsigned t = 2 + trial % 4;  // 2..5
    PrimePowerModulus m(p, t);
    std::uniform_int_distribution<long> dc(0, 1000);
    std::vector<mpz_class> cs;
    int d = 1 + trial % 5;
    for (int i = 0; i <= d; ++i) cs.emplace_back(dc(rng));
    ZptPolynomial f = univar(m, cs);
    unsigned k = 1 + trial % (t - 1);  // 1 <= k, k+1 <= t
    ZptPolynomial sub = digit_substitute(f, k);
    CHECK(sub.arity() == k + 1);
    // check on random points: x = a1 + p a2 + ... + p^(k-1) a_k + p^k y
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<mpz_class> pt;
      mpz_class x = 0, pw = 1;
      for (unsigned i = 0; i <= k; ++i) {
        mpz_class a = dc(rng) % m.modulus();
        pt.push_back(a);
        x += pw * a;
        pw *= p;
      }
      CHECK(sub.eval(pt) == f.eval({m.reduce(x)}));
    }
  }
}

TEST_CASE("digit substitution degree bound") {
  PrimePowerModulus m(3, 4);
  ZptPolynomial f = univar(m, {1, 2, 0, 1, 0, 0, 2, 1});
  for (unsigned k = 1; k + 1 <= 4; ++k) {
    ZptPolynomial sub = digit_substitute(f, k);
    CHECK(sub.degree_in(k) < static_cast<int>((4 + k - 1) / k));
  }
}

TEST_CASE("hasse derivatives and taylor sections") {
  PrimePowerModulus m(2, 3);
  // f = x^3: Hasse derivatives 3x^2, 3x, 1 (binomials, no division).
  ZptPolynomial f = univar(m, {0, 0, 0, 1});
  CHECK(hasse_derivative(f, 1) == univar(m, {0, 0, 3}));
  CHECK(hasse_derivative(f, 2) == univar(m, {0, 3}));
  CHECK(hasse_derivative(f, 3) == univar(m, {1}));
  CHECK(hasse_derivative(f, 4).is_zero());

  // T_{m,j}(x, y) = sum_{i=1..j} y^(i-1) H_i(m)(x); check via the Taylor
  // identity m(x + y) = m(x) + y * T_{m,deg}(x, y).
  PrimePowerModulus m2(5, 2);
  ZptPolynomial g = univar(m2, {3, 1, 4, 1});
  TaylorSection ts = taylor_sections(g, 3);
  CHECK(ts.j == 3);
  for (long x = 0; x < 5; ++x) {
    for (long y = 0; y < 5; ++y) {
      mpz_class lhs = g.eval({m2.reduce(x + y)});
      mpz_class rhs =
          m2.reduce(g.eval({mpz_class(x)}) + y * ts.poly.eval({x, y}));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("triangular reduction") {
  PrimePowerModulus m(5, 2);
  // gens: x1^2 - 2 (monic), then x2^2 - x1 (monic in x2).
  ZptPolynomial g1 = univar(m, {23, 0, 1}).with_arity(1);
  ZptPolynomial x1 = ZptPolynomial::variable(m, 2, 0);
  ZptPolynomial x2 = ZptPolynomial::variable(m, 2, 1);
  ZptPolynomial g2 = x2 * x2 - x1;
  std::vector<ZptPolynomial> gens{g1, g2};

  // x2^4 reduces to x1^2 reduces to 2
  ZptPolynomial f = x2 * x2 * x2 * x2;
  CHECK(reduce_mod_triangular(f, gens) == ZptPolynomial::constant(m, 2, 2));
  // degrees below generator degrees stay put
  ZptPolynomial r = reduce_mod_triangular(x1 * x2, gens);
  CHECK(r == x1 * x2);
  // untouched variables beyond the list survive
  ZptPolynomial x3 = ZptPolynomial::variable(m, 3, 2);
  CHECK(reduce_mod_triangular(x3, gens) == x3);
}

TEST_CASE("valuation extraction") {
  PrimePowerModulus m(5, 3);
  ZptPolynomial g1 = univar(m, {124, 0, 1});  // x1^2 - 1
  // f = 5*x1 + 25: valuation 1, g = x1 + 5
  ZptPolynomial f = univar(m, {25, 5}).with_arity(1);
  ValuationSplit vs = extract_valuation(f, {g1});
  CHECK(vs.s == 1);
  CHECK(vs.g.modulus().exponent() == 2);
  CHECK(vs.g.coeff({0}) == 5);
  CHECK(vs.g.coeff({1}) == 1);

  // f divisible by the generator: remainder 0, s = t
  ZptPolynomial h = univar(m, {124, 0, 1});
  vs = extract_valuation(h, {g1});
  CHECK(vs.s == 3);
  CHECK(vs.g.is_zero());

  // unit remainder: s = 0 and g is the remainder itself
  vs = extract_valuation(univar(m, {7}), {g1});
  CHECK(vs.s == 0);
  CHECK(vs.g.constant_value() == 7);
}

TEST_CASE("discriminant of the last variable") {
  PrimePowerModulus m(5, 1);
  ZptPolynomial x1 = ZptPolynomial::variable(m, 2, 0);
  ZptPolynomial x2 = ZptPolynomial::variable(m, 2, 1);
  ZptPolynomial g1 = univar(m, {3, 0, 1}).with_arity(1);  // x1^2 + 3

  // disc_y(y^2 + x1) = -4*x1 = x1 mod 5
  ZptPolynomial g = x2 * x2 + x1;
  ZptPolynomial d = discriminant_last_var(g, {g1});
  CHECK(d == x1);

  // linear is unit by convention
  CHECK(discriminant_last_var(x2 + x1, {g1}) ==
        ZptPolynomial::constant(m, 2, 1));

  // disc_y(y^2 + x1*y + 1) = x1^2 - 4, which reduces to -3 - 4 = 3
  ZptPolynomial q = x2 * x2 + x1 * x2 + ZptPolynomial::constant(m, 2, 1);
  CHECK(discriminant_last_var(q, {g1}) == ZptPolynomial::constant(m, 2, 3));

  ZptPolynomial bad = (x1 * x2) * x2 + x1;  // lead x1 not a unit constant
  CHECK_THROWS_AS(discriminant_last_var(bad, {g1}), NonMonicLeadingError);
}

TEST_CASE("berkowitz charpoly") {
  PrimePowerModulus m(7, 2);
  TriangularQuotientRing ring{m, 1, nullptr};
  std::vector<ZptPolynomial> empty_gens;
  ring.gens = &empty_gens;
  auto c = [&](long v) { return ZptPolynomial::constant(m, 1, v); };

  // [[2, 1], [3, 4]]: charpoly = l^2 - 6l + 5
  std::vector<ZptPolynomial> a{c(2), c(1), c(3), c(4)};
  auto cp = charpoly_berkowitz(a, 2, ring);
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == c(5));
  CHECK(cp[1] == c(-6));
  CHECK(cp[2] == c(1));

  // 3x3 companion matrix of x^3 - 1 has charpoly x^3 - 1
  std::vector<ZptPolynomial> b{c(0), c(0), c(1), c(1), c(0), c(0),
                               c(0), c(1), c(0)};
  auto cp3 = charpoly_berkowitz(b, 3, ring);
  REQUIRE(cp3.size() == 4);
  CHECK(cp3[0] == c(-1));
  CHECK(cp3[1] == c(0));
  CHECK(cp3[2] == c(0));
  CHECK(cp3[3] == c(1));
}

TEST_CASE("monomial order is lex from the top variable") {
  MonomialOrder lt;
  CHECK(lt({1, 0}, {0, 1}));
  CHECK_FALSE(lt({0, 1}, {1, 0}));
  CHECK(lt({2, 1}, {0, 2}));
  CHECK_FALSE(lt({1, 1}, {1, 1}));
  CHECK(lt({1}, {1, 1}));  // shorter tuple pads with zeros
}
