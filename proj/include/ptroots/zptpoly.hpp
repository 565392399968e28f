#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ptroots/modarith.hpp"

namespace ptroots {

// Exponent tuple; index i holds the exponent of the variable printed as
// x{i+1}. Length always equals the owning polynomial's arity.
using Monomial = std::vector<unsigned>;

// Lexicographic order with the highest-index variable most significant, so
// the generator of a triangular ideal is automatically sorted by its own
// variable and the top term of the map is the leading term.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    size_t n = a.size() > b.size() ? a.size() : b.size();
    for (size_t i = n; i-- > 0;) {
      unsigned ea = i < a.size() ? a[i] : 0;
      unsigned eb = i < b.size() ? b[i] : 0;
      if (ea != eb) return ea < eb;
    }
    return false;
  }
};

// Sparse multivariate polynomial over Z/(p^t). Stored terms have nonzero
// canonical coefficients in [0, p^t). A monomial whose expansion coefficient
// picks up p-power weight >= t therefore disappears on its own, which is
// what keeps digit substitution small.
class ZptPolynomial {
 public:
  using TermMap = std::map<Monomial, mpz_class, MonomialOrder>;

  ZptPolynomial(PrimePowerModulus mod, unsigned arity);

  static ZptPolynomial constant(const PrimePowerModulus& mod, unsigned arity,
                                const mpz_class& c);
  static ZptPolynomial variable(const PrimePowerModulus& mod, unsigned arity,
                                unsigned var);
  static ZptPolynomial monomial(const PrimePowerModulus& mod, unsigned arity,
                                Monomial m, const mpz_class& c);
  // Univariate from a constant-first coefficient list (arity 1).
  static ZptPolynomial from_univariate(const PrimePowerModulus& mod,
                                       const std::vector<mpz_class>& coeffs);

  const PrimePowerModulus& modulus() const { return mod_; }
  unsigned arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpz_class constant_value() const;  // 0 for the zero polynomial
  mpz_class coeff(const Monomial& m) const;

  // Degree in one variable; -1 for the zero polynomial.
  int degree_in(unsigned var) const;

  ZptPolynomial operator+(const ZptPolynomial& o) const;
  ZptPolynomial operator-(const ZptPolynomial& o) const;
  ZptPolynomial operator*(const ZptPolynomial& o) const;
  ZptPolynomial operator*(const mpz_class& c) const;
  ZptPolynomial operator-() const;
  bool operator==(const ZptPolynomial& o) const;
  bool operator!=(const ZptPolynomial& o) const { return !(*this == o); }

  ZptPolynomial derivative_in(unsigned var) const;

  // Coefficients of powers of x_var: result[e] does not involve x_var and
  // keeps the full arity. Size degree_in(var)+1 (empty for zero input).
  std::vector<ZptPolynomial> coeffs_in(unsigned var) const;
  static ZptPolynomial from_coeffs_in(unsigned var,
                                      const std::vector<ZptPolynomial>& cs);

  // Widen (or narrow, when the dropped variables are unused) the arity.
  ZptPolynomial with_arity(unsigned k) const;
  // Same terms read mod p (exponent-1 modulus).
  ZptPolynomial reduced_mod_p() const;
  // Reinterpret canonical representatives in a different-exponent modulus.
  ZptPolynomial lifted_to(const PrimePowerModulus& m) const;

  mpz_class eval(const std::vector<mpz_class>& point) const;
  ZptPolynomial substitute(unsigned var, const ZptPolynomial& value) const;

  // Deterministic display form, e.g. "x2^2 + 10*x1*x2 + 25". Terms in
  // descending monomial order.
  std::string to_string() const;

  // Normalizing insert: reduces c, drops zeros, merges duplicates.
  void add_term(Monomial m, const mpz_class& c);

 private:
  PrimePowerModulus mod_;
  unsigned arity_;
  TermMap terms_;
};

// f(x1 + p*x2 + ... + p^k*x_{k+1}) for univariate f, expanded in k+1
// variables by Horner. Terms with p-power weight >= t vanish in the modular
// arithmetic, so the x_{k+1}-degree of the result is < t/k automatically.
// Requires arity(f) == 1, 1 <= k, k+1 <= t.
ZptPolynomial digit_substitute(const ZptPolynomial& f, unsigned k);

// T_{m,j}(x, y) = sum_{1 <= i <= j} y^{i-1} * (i-th Hasse derivative of m)(x).
// Integral in all characteristics because the binomial form never divides.
struct TaylorSection {
  unsigned j;
  ZptPolynomial poly;  // arity 2: x = variable 0, y = variable 1
};
TaylorSection taylor_sections(const ZptPolynomial& m, unsigned j);

// i-th Hasse derivative of univariate f: sum_n binom(n, i) a_n x^(n-i).
ZptPolynomial hasse_derivative(const ZptPolynomial& f, unsigned i);

// Canonical remainder of f modulo a triangular generator list: gens[i] is
// monic in variable i with all other terms of lower degree there. Reduction
// runs from the highest generated variable down, leaving every degree in
// variable i below deg_i(gens[i]). Variables of f beyond the generator list
// are untouched. Division-free (the generators are monic).
ZptPolynomial reduce_mod_triangular(const ZptPolynomial& f,
                                    const std::vector<ZptPolynomial>& gens);

// f ~ p^s * g mod (gens, p^t) with s maximal: s is the minimum p-valuation
// over the coefficients of the canonical remainder, capped at t, and g is
// the remainder divided by p^s, carried at modulus p^(t-s) where it is
// well defined. Identically-zero remainder gives (t, 0) at the original
// modulus.
struct ValuationSplit {
  unsigned s;
  ZptPolynomial g;
};
ValuationSplit extract_valuation(const ZptPolynomial& f,
                                 const std::vector<ZptPolynomial>& gens);

// Discriminant of g with respect to its last variable, as an element of the
// quotient by gens: (-1)^(n(n-1)/2) * det Sylvester(g, dg), reduced. Degree
// one returns the constant 1. The leading coefficient of g must reduce to a
// unit constant (callers normalize first); otherwise NonMonicLeadingError
// carries its display form.
ZptPolynomial discriminant_last_var(const ZptPolynomial& g,
                                    const std::vector<ZptPolynomial>& gens);

// Characteristic polynomial det(lambda*I - A) of an n x n matrix over a
// commutative ring, by the Berkowitz vector recurrence: division-free, so it
// is safe in quotient rings full of zero divisors. a is row-major (a[i*n+j]).
// Returns n+1 coefficients, ascending in lambda; the top one is ring one.
// R supplies: typename R::Elem, zero(), one(), add(a,b), sub(a,b), mul(a,b).
template <typename R>
std::vector<typename R::Elem> charpoly_berkowitz(
    const std::vector<typename R::Elem>& a, size_t n, const R& ring) {
  using Elem = typename R::Elem;
  std::vector<Elem> pol;  // descending coefficients, leading first
  pol.push_back(ring.one());
  for (size_t r = 1; r <= n; ++r) {
    // v[0..r] from the leading principal r x r block: v = [1, -corner,
    // -(row * col), -(row * B * col), ...] with B the (r-1) x (r-1) block.
    std::vector<Elem> v;
    v.reserve(r + 1);
    v.push_back(ring.one());
    v.push_back(ring.sub(ring.zero(), a[(r - 1) * n + (r - 1)]));
    std::vector<Elem> w;  // running B^j * col
    w.reserve(r - 1);
    for (size_t i = 0; i + 1 < r; ++i) w.push_back(a[i * n + (r - 1)]);
    for (size_t j = 2; j <= r; ++j) {
      Elem dot = ring.zero();
      for (size_t i = 0; i + 1 < r; ++i) {
        dot = ring.add(dot, ring.mul(a[(r - 1) * n + i], w[i]));
      }
      v.push_back(ring.sub(ring.zero(), dot));
      if (j < r) {
        std::vector<Elem> nw;
        nw.reserve(r - 1);
        for (size_t i = 0; i + 1 < r; ++i) {
          Elem acc = ring.zero();
          for (size_t l = 0; l + 1 < r; ++l) {
            acc = ring.add(acc, ring.mul(a[i * n + l], w[l]));
          }
          nw.push_back(acc);
        }
        w = std::move(nw);
      }
    }
    // Truncated convolution: the new coefficient vector has length r+1.
    std::vector<Elem> next(r + 1, ring.zero());
    for (size_t i = 0; i <= r; ++i) {
      for (size_t j = 0; j < pol.size() && j <= i; ++j) {
        if (i - j < v.size()) {
          next[i] = ring.add(next[i], ring.mul(v[i - j], pol[j]));
        }
      }
    }
    pol = std::move(next);
  }
  std::vector<Elem> ascending(pol.rbegin(), pol.rend());
  return ascending;
}

// Ring of ZptPolynomials reduced modulo a triangular generator list; the
// workhorse behind matrix characteristic polynomials in quotient rings.
struct TriangularQuotientRing {
  using Elem = ZptPolynomial;
  PrimePowerModulus mod;
  unsigned arity;
  const std::vector<ZptPolynomial>* gens;

  Elem zero() const { return ZptPolynomial(mod, arity); }
  Elem one() const { return ZptPolynomial::constant(mod, arity, 1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const {
    return reduce_mod_triangular(a * b, *gens);
  }
};

}  // namespace ptroots
