#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ptroots/fppoly.hpp"

using namespace ptroots;

namespace {

FpPolynomial random_poly(std::mt19937_64& rng, const mpz_class& p, int maxdeg) {
  std::uniform_int_distribution<int> dd(0, maxdeg);
  std::uniform_int_distribution<long> dc(0, mpz_get_si(p.get_mpz_t()) - 1);
  int d = dd(rng);
  std::vector<mpz_class> cs;
  for (int i = 0; i <= d; ++i) cs.emplace_back(dc(rng));
  return FpPolynomial(p, cs);
}

}  // namespace

TEST_CASE("construction canonicalizes") {
  FpPolynomial f(5, {7, -1, 10, 0, 0});
  CHECK(f.degree() == 1);
  CHECK(f.coeff(0) == 2);
  CHECK(f.coeff(1) == 4);
  CHECK(f.coeff(7) == 0);
  CHECK_FALSE(f.is_zero());
  CHECK(FpPolynomial(5, {0}).is_zero());
  CHECK(FpPolynomial(5).degree() == -1);
  CHECK(FpPolynomial::x(5).degree() == 1);
  CHECK(FpPolynomial::monomial(5, 2, 3).coeff(3) == 2);
  CHECK(FpPolynomial::constant(5, 9).coeff(0) == 4);
}

TEST_CASE("ring operations") {
  mpz_class p = 7;
  FpPolynomial a(p, {1, 2, 3});
  FpPolynomial b(p, {6, 5});
  CHECK((a + b) == FpPolynomial(p, {0, 0, 3}));
  CHECK((a - b) == FpPolynomial(p, {2, 4, 3}));
  CHECK((a * b) == FpPolynomial(p, {6, 3, 0, 1}));
  CHECK((a * mpz_class(2)) == FpPolynomial(p, {2, 4, 6}));
  CHECK(a.derivative() == FpPolynomial(p, {2, 6}));
  CHECK(a.eval(1) == 6);
  CHECK(a.eval(2) == 3);  // 1 + 4 + 12 = 17 = 3 mod 7
  CHECK(FpPolynomial(p, {0, 0, 0, 5}).make_monic().leading_coeff() == 1);
}

TEST_CASE("divrem and gcd") {
  mpz_class p = 5;
  FpPolynomial a(p, {1, 0, 0, 1});  // x^3 + 1
  FpPolynomial b(p, {1, 1});        // x + 1
  FpDivRem qr = divrem(a, b);
  CHECK(qr.remainder.is_zero());
  CHECK(qr.quotient == FpPolynomial(p, {1, 4, 1}));
  CHECK(divexact(a, b) == qr.quotient);
  CHECK_THROWS_AS(divexact(FpPolynomial(p, {1, 1, 1}), b), Error);

  CHECK(gcd(a, b) == b);
  CHECK(gcd(a, FpPolynomial(p)) == a.make_monic());
  CHECK(gcd(FpPolynomial(p), FpPolynomial(p)).is_zero());
  FpPolynomial g = gcd(FpPolynomial(p, {4, 0, 1}), FpPolynomial(p, {4, 1}));
  CHECK(g == FpPolynomial(p, {4, 1}));  // x^2 - 1 and x - 1 share x - 1
}

TEST_CASE("split part") {
  mpz_class p = 5;
  // x^2 + 1 = (x - 2)(x - 3) mod 5
  FpPolynomial f(p, {1, 0, 1});
  CHECK(split_part(f) == f.make_monic());
  // x^2 + 2 has no roots mod 5
  CHECK(split_part(FpPolynomial(p, {2, 0, 1})).is_one());
  // x^3 - x = x(x-1)(x+1)
  CHECK(split_part(FpPolynomial(p, {0, 4, 0, 1})).degree() == 3);
  // x^2: distinct linear factors = x
  CHECK(split_part(FpPolynomial(p, {0, 0, 1})) == FpPolynomial::x(p));
  CHECK(frobenius_power(FpPolynomial(p, {0, 4, 0, 1})) ==
        FpPolynomial::x(p));  // x^5 = x mod x^3 - x
}

TEST_CASE("multiplicity type examples") {
  mpz_class p = 5;
  // f = 3 * x^2 * (x-1)^3 * (x^2+2)
  FpPolynomial f = FpPolynomial::constant(p, 3);
  f = f * FpPolynomial(p, {0, 0, 1});
  FpPolynomial xm1(p, {4, 1});
  f = f * xm1 * xm1 * xm1;
  f = f * FpPolynomial(p, {2, 0, 1});
  MultiplicityTypeFactorization mt = multiplicity_type_factor(f);
  CHECK(mt.unit == 3);
  CHECK(mt.nonlinear == FpPolynomial(p, {2, 0, 1}));
  REQUIRE(mt.split_parts.size() == 2);
  CHECK(mt.split_parts[0].multiplicity == 2);
  CHECK(mt.split_parts[0].factor == FpPolynomial(p, {0, 1}));
  CHECK(mt.split_parts[1].multiplicity == 3);
  CHECK(mt.split_parts[1].factor == xm1);
}

TEST_CASE("multiplicity type recomposition property") {
  std::mt19937_64 rng(20240811);
  const mpz_class primes[] = {2, 3, 5, 7, 13};
  int done = 0;
  while (done < 500) {
    const mpz_class& p = primes[done % 5];
    FpPolynomial f = random_poly(rng, p, 8);
    if (f.is_zero()) continue;
    ++done;
    MultiplicityTypeFactorization mt = multiplicity_type_factor(f);
    FpPolynomial prod = FpPolynomial::constant(p, mt.unit);
    unsigned prev = 0;
    for (const auto& part : mt.split_parts) {
      CHECK(part.multiplicity > prev);
      prev = part.multiplicity;
      CHECK(part.factor.leading_coeff() == 1);
      // factor splits completely: it equals its own split part
      CHECK(split_part(part.factor) == part.factor);
      // squarefree
      CHECK(gcd(part.factor, part.factor.derivative()).is_one());
      for (unsigned i = 0; i < part.multiplicity; ++i)
        prod = prod * part.factor;
    }
    CHECK(split_part(mt.nonlinear).is_one());
    prod = prod * mt.nonlinear;
    CHECK(prod == f);
    // pairwise coprime split parts
    for (size_t i = 0; i < mt.split_parts.size(); ++i)
      for (size_t j = i + 1; j < mt.split_parts.size(); ++j)
        CHECK(gcd(mt.split_parts[i].factor, mt.split_parts[j].factor)
                  .is_one());
  }
}

TEST_CASE("root enumeration") {
  mpz_class p = 7;
  FpPolynomial f(p, {3, 0, 1});  // x^2 + 3 = (x-2)(x-5) mod 7
  auto roots = enumerate_linear_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == 2);
  CHECK(roots[1] == 5);
  CHECK(enumerate_linear_roots(FpPolynomial(p, {1})).empty());
  FpPolynomial big(mpz_class("2147483647"), {1, 1});
  CHECK_THROWS_AS(enumerate_linear_roots(big), SmallPrimeOnlyError);
}
