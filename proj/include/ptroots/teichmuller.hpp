#pragma once

#include <functional>

#include "ptroots/triangular.hpp"

namespace ptroots {

// Multiplicative lift of a mod-p residue into Z/(p^t): the unique root of
// x^p - x there that is congruent to a mod p. Computed as a^(p^t) by t
// successive p-th powers.
mpz_class teich_element(const mpz_class& a, const PrimePowerModulus& m);

struct TeichOptions {
  // Optional lift applied to every companion-matrix entry: maps a canonical
  // mod-p value to any representative congruent to it mod p. The lifted
  // characteristic polynomial is independent of the choice, which makes this
  // hook a direct way to exercise that invariance; setting it forces the
  // general matrix-power route (the default canonical lift can instead power
  // the multiplication operator inside the quotient, which is cheaper).
  std::function<mpz_class(const mpz_class&)> entry_lift;
};

// Monic univariate lift of m to Z/(p^t): same degree, reduces back to m
// mod p, and its roots are exactly the multiplicative lifts of the roots of
// m. Built as the characteristic polynomial of the p^t-th power of the
// companion matrix of (any entry lift of) m. m must be monic and split into
// distinct linear factors mod p.
ZptPolynomial teich_poly(const FpPolynomial& m,
                         const PrimePowerModulus& target,
                         const TeichOptions& opts = {});

// Levelwise lift of a splitting triangular mod-p ideal to modulus p^t: each
// generator becomes the characteristic polynomial of the p^t-th power of its
// companion matrix over the already-lifted prefix quotient. The result is
// splitting triangular mod p^t, reduces back to the input mod p, and every
// level satisfies x_i^p == x_i in the lifted quotient.
TriangularIdeal teich_ideal(const TriangularIdeal& I,
                            const PrimePowerModulus& target,
                            const TeichOptions& opts = {});

}  // namespace ptroots
