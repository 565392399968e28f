#pragma once

#include <vector>

#include "ptroots/modarith.hpp"
#include "ptroots/zptpoly.hpp"

namespace ptroots {

struct OracleBudget {
  unsigned long max_points = 10'000'000UL;
};

// Number of x in [0, p^t) with f(x) == 0 mod p^t, by evaluating every
// residue with Horner's rule. Deliberately artless: this is the ground
// truth the fast engines are measured against. Coefficients are taken
// constant term first and reduced mod p^t up front.
mpz_class brute_force_count(const std::vector<mpz_class>& coeffs,
                            const PrimePowerModulus& mod,
                            const OracleBudget& budget = {});

// All common zeros in F_p^arity of a family of mod-p polynomials, by
// scanning the full grid; points come back lexicographically sorted.
// Generators of smaller arity are evaluated on the matching prefix of each
// point.
std::vector<std::vector<mpz_class>> enumerate_system(
    const std::vector<ZptPolynomial>& gens, unsigned arity,
    const mpz_class& p, const OracleBudget& budget = {});

}  // namespace ptroots
