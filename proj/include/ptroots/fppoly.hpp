#pragma once

#include <vector>

#include "ptroots/modarith.hpp"

namespace ptroots {

// Dense univariate polynomial over F_p, coefficients canonical in [0, p),
// constant term first, no trailing zeros (zero polynomial has no terms).
class FpPolynomial {
 public:
  explicit FpPolynomial(mpz_class p);
  FpPolynomial(mpz_class p, std::vector<mpz_class> coeffs);

  const mpz_class& prime() const { return p_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(int i) const;
  const mpz_class& leading_coeff() const;

  bool is_one() const;
  bool operator==(const FpPolynomial& o) const;
  bool operator!=(const FpPolynomial& o) const { return !(*this == o); }

  FpPolynomial operator+(const FpPolynomial& o) const;
  FpPolynomial operator-(const FpPolynomial& o) const;
  FpPolynomial operator*(const FpPolynomial& o) const;
  FpPolynomial operator*(const mpz_class& c) const;

  FpPolynomial derivative() const;
  FpPolynomial make_monic() const;
  mpz_class eval(const mpz_class& a) const;

  static FpPolynomial constant(const mpz_class& p, const mpz_class& c);
  static FpPolynomial x(const mpz_class& p);
  static FpPolynomial monomial(const mpz_class& p, const mpz_class& c, unsigned e);

 private:
  void trim();

  mpz_class p_;
  std::vector<mpz_class> coeffs_;
};

struct FpDivRem {
  FpPolynomial quotient;
  FpPolynomial remainder;
};

// Division with remainder; divisor must have a unit leading coefficient.
FpDivRem divrem(const FpPolynomial& a, const FpPolynomial& b);

// Exact division; throws if the remainder is nonzero.
FpPolynomial divexact(const FpPolynomial& a, const FpPolynomial& b);

// Monic gcd; gcd(a, 0) = monic a, gcd(0, 0) = 0.
FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b);

// x^p mod f by square-and-multiply; requires deg f >= 1.
FpPolynomial frobenius_power(const FpPolynomial& f);

// Monic product of the distinct linear factors of f: gcd(f, x^p - x).
// Returns the constant 1 when f has no roots in F_p.
FpPolynomial split_part(const FpPolynomial& f);

// f = unit * prod f_i^i * nonlinear, where each f_i is monic, squarefree,
// splits completely into distinct linear factors, the f_i are pairwise
// coprime, and nonlinear has no roots in F_p.
struct MultiplicityTypePart {
  FpPolynomial factor;
  unsigned multiplicity;
};

struct MultiplicityTypeFactorization {
  mpz_class unit;
  std::vector<MultiplicityTypePart> split_parts;  // ascending multiplicity
  FpPolynomial nonlinear;
};

MultiplicityTypeFactorization multiplicity_type_factor(const FpPolynomial& f);

// All roots of f in F_p by exhaustive evaluation, sorted ascending.
// Guarded: throws SmallPrimeOnlyError when p > cap.
std::vector<mpz_class> enumerate_linear_roots(const FpPolynomial& f,
                                              unsigned long cap = 1u << 20);

}  // namespace ptroots
