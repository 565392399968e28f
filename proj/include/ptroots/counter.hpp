#pragma once

#include <string>
#include <vector>

#include "ptroots/fppoly.hpp"
#include "ptroots/modarith.hpp"
#include "ptroots/zptpoly.hpp"

namespace ptroots {

enum class Engine { Auto, Tree, SmallP };

struct EngineOptions {
  Engine force = Engine::Auto;
  unsigned threads = 1;
  bool collect_tree = false;
};

// One visited node of the ideal tree (or the single aggregate record of a
// non-tree engine). path is the dotted child-index address from the root,
// e.g. "0.2.1"; contribution is the absolute number of roots counted below
// the node, so a parent's contribution is the sum over its children.
struct NodeRecord {
  std::string path;
  unsigned level = 0;
  unsigned s_value = 0;
  std::vector<unsigned> gen_degrees;
  std::string status;  // root | expanded | terminal-saturated |
                       // terminal-hensel | terminal-empty | aggregate
  unsigned multiplicity = 0;
  mpz_class contribution;
};

struct CountStats {
  unsigned long nodes = 0;
  unsigned max_level = 0;
  long wall_ms = 0;
  std::string engine;
  unsigned normalized_coeffs = 0;   // input coefficients changed by reduction
  unsigned content_valuation = 0;   // v when f = p^v * h with p not dividing h
};

struct CountResult {
  mpz_class total;
  std::vector<NodeRecord> per_leaf;  // leaves in depth-first order
  std::vector<NodeRecord> tree;      // all nodes, preorder; only when asked
  CountStats stats;
};

// Number of roots of f in Z/(p^t). Coefficients are constant term first,
// any integers; they are reduced mod p^t up front (stats counts how many
// changed). Dispatches between the closed forms for t = 1 and t = 3, the
// small-prime digit recursion, and the ideal-tree engine; the result does
// not depend on the dispatch path.
CountResult count_roots(const std::vector<mpz_class>& coeffs,
                        const PrimePowerModulus& mod,
                        const EngineOptions& opts = {});

// t = 1: the number of roots in F_p is the degree of gcd(x^p - x, f).
mpz_class count_t1(const FpPolynomial& f);

// t = 3 closed-form engine. Requires p odd and p not dividing f.
mpz_class count_t3(const std::vector<mpz_class>& coeffs, const mpz_class& p);

// F_p^2 solutions of the system m(x1) = 0, g(x1, x2) = 0 with m monic,
// squarefree and split, and g (arity 2, mod p) of degree at most 2 in x2;
// a quadratic g must be monic in x2 after reduction mod m. Computed as
// E - deg gcd(m, X) where E counts the roots of det g(M, x2) with
// multiplicity and X is the x2-discriminant of g; when gcd(m, X) is a
// proper factor the operation splits m and recurses on both parts.
mpz_class count_system_t3(const FpPolynomial& m, const ZptPolynomial& g);

// Digit recursion on explicit roots: enumerate the roots of f mod p and
// recurse on the shifted quotient with reduced exponent. Exact for any
// prime small enough to enumerate.
mpz_class count_small_p(const std::vector<mpz_class>& coeffs,
                        const PrimePowerModulus& mod);

// [N_0, N_1, ..., N_T] with N_0 = 1 by convention.
std::vector<mpz_class> poincare_truncated(const std::vector<mpz_class>& coeffs,
                                          const mpz_class& p, unsigned max_exp,
                                          const EngineOptions& opts = {});

}  // namespace ptroots
