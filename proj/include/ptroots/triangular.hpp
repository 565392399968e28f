#pragma once

#include <utility>
#include <vector>

#include "ptroots/fppoly.hpp"
#include "ptroots/zptpoly.hpp"

namespace ptroots {

// Bridging helpers between the dense univariate F_p layer and the sparse
// multivariate layer.
ZptPolynomial to_zpt(const FpPolynomial& f, const PrimePowerModulus& mod,
                     unsigned arity, unsigned var);
// f must involve only the given variable; read mod p.
FpPolynomial to_fp_univariate(const ZptPolynomial& f, unsigned var);

// Ideal (g_1(x1), g_2(x1,x2), ..., g_k(x1..xk), p^t) with g_i monic of
// degree n_i >= 1 in its own variable and reduced modulo the earlier
// generators. The generator list is its own lex Groebner basis. The quotient
// is a free Z/(p^t)-module of rank prod n_i.
struct TriangularIdeal {
  PrimePowerModulus modulus;
  std::vector<ZptPolynomial> gens;  // gens[i] has arity i+1

  unsigned level() const { return static_cast<unsigned>(gens.size()); }
  std::vector<unsigned> degrees() const;
  // prod n_i: the number of rational points when the ideal splits.
  mpz_class point_count() const;
  TriangularIdeal mod_p() const;
  ZptPolynomial reduce(const ZptPolynomial& f) const;
  // Shape check: monic, reduced, positive degree at every level.
  void validate() const;
};

// Total order for deterministic decompositions: by level, then degree
// profile, then termwise generator comparison.
int compare_ideals(const TriangularIdeal& a, const TriangularIdeal& b);

// Outcome of attempting to invert a in the quotient mod (I, p^t).
// Inverted: a unit; inverse is reduced mod (I, p^t).
// SplitFound: a is a zero divisor; parts are two mod-p triangular ideals
//   whose intersection is I mod p, discovered by the extended-gcd ladder.
// ZeroElement: a reduces to 0 mod (I, p) and vanishes on every root.
struct QuasiInverse {
  enum class Kind { Inverted, SplitFound, ZeroElement } kind;
  ZptPolynomial inverse;         // Kind::Inverted
  std::vector<TriangularIdeal> parts;  // Kind::SplitFound: exactly two
};

QuasiInverse invert_or_split(const ZptPolynomial& a, const TriangularIdeal& I);

// x_{k+1}^p - x_{k+1} reduced modulo (I, f, p), f monic in x_{k+1}; by
// square-and-multiply in the quotient. I must be a mod-p ideal.
ZptPolynomial frobenius_section(const TriangularIdeal& I,
                                const ZptPolynomial& f);

// Refine I (mod p, splitting) into components on which a either vanishes
// identically or is invertible. Components are pairwise coprime and cover I.
struct SiftedPart {
  TriangularIdeal component;
  bool vanishes;
};
std::vector<SiftedPart> sift_vanishing(const ZptPolynomial& a,
                                       const TriangularIdeal& I);

// Dynamic-evaluation gcd of a and b in the variable var over the quotient by
// the mod-p ideal I: Euclid's ladder, splitting I whenever a leading
// coefficient turns out to be a zero divisor. Every returned gcd is monic in
// var (or the constant 1 when the gcd is trivial on that component).
struct GcdComponent {
  TriangularIdeal component;
  ZptPolynomial gcd;
};
std::vector<GcdComponent> d5_gcd(const ZptPolynomial& a,
                                 const ZptPolynomial& b,
                                 const TriangularIdeal& I, unsigned var);

// Pairwise-coprime splitting triangular components; multiplicities aligned
// when a decomposition computes them (empty otherwise). No rational
// solutions at all is represented by zero components.
struct SplittingCertificate {
  std::vector<TriangularIdeal> components;
  std::vector<unsigned> multiplicities;
};

// Components of the rational radical of (I, f): every F_p-solution of
// (I, f) lies in exactly one component; each component is splitting
// triangular in k+1 variables; the part of f with no rational solutions is
// dropped. I mod p splitting; f monic in x_{k+1}. For small p the
// computation is routed through the lex-basis / chain / colon pipeline; for
// large p through per-component gcds with x_{k+1}^p - x_{k+1}.
SplittingCertificate rational_radical_extend(const TriangularIdeal& I,
                                             const ZptPolynomial& f);

// Reduced lexicographic Groebner basis of the vanishing ideal of a finite
// rational point set, by the Buchberger-Moeller evaluation method. Elements
// ascend by leading monomial; all coefficients mod p.
struct LexBasis {
  unsigned arity;
  mpz_class p;
  std::vector<ZptPolynomial> elements;
};
LexBasis build_lex_basis(const std::vector<std::vector<mpz_class>>& points,
                         unsigned arity, const mpz_class& p);

// Chain of base-variable ideals read off a reduced lex basis: link a holds
// the leading coefficients (with respect to the last variable) of all basis
// elements whose degree there is at most ext_degree(a). The ext_degrees are
// the distinct last-variable degrees 0 = t_0 < t_1 < ... < t_v appearing in
// the basis; solutions of link a that do not solve link a+1 extend to
// exactly t_{a+1} rational points.
struct IdealChain {
  struct Link {
    unsigned ext_degree;
    std::vector<ZptPolynomial> lc_gens;  // polynomials in the base variables
  };
  unsigned base_arity;
  mpz_class p;
  std::vector<Link> links;
};
IdealChain leading_coeff_chain(const LexBasis& basis);

// Splitting triangular components of the base grouped by extension count:
// component a covers the solutions of link a that are not solutions of link
// a+1 (the colon-ideal quotient, computed by sifting solution sets rather
// than syzygies). Exhaustive over the base grid, so small p only.
std::vector<TriangularIdeal> colon_decompose(const IdealChain& chain);

// Refine (J, f) by the root multiplicity of f along its rational solutions:
// returns splitting triangular (k+1)-level ideals paired with that
// multiplicity. Ordinary derivatives are used, probing j = 1, 2, ... up to
// min(deg f, p-1); in characteristic p multiplicities at or beyond the cap
// are reported as the cap (they only order tree children, never counts).
// J mod-p splitting with k levels; f monic in x_{k+1}.
std::vector<std::pair<TriangularIdeal, unsigned>> multiplicity_by_derivatives(
    const TriangularIdeal& J, const ZptPolynomial& f);

// rational_radical_extend followed by multiplicity refinement; the
// certificate's multiplicities are aligned with its components.
SplittingCertificate decompose_with_multiplicity(const TriangularIdeal& I,
                                                 const ZptPolynomial& f);

// All rational points of a splitting mod-p ideal by back-substitution,
// lexicographically sorted. Guarded: throws SmallPrimeOnlyError when root
// enumeration at some level would exceed the cap.
std::vector<std::vector<mpz_class>> enumerate_points(const TriangularIdeal& I,
                                                     unsigned long cap = 1u
                                                                         << 20);

}  // namespace ptroots
