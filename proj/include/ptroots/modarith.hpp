#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ptroots {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Modulus construction rejected: p not prime or t < 1.
struct InvalidModulusError : Error {
  using Error::Error;
};

// Inversion of a residue divisible by p. Callers that can split ideals
// detect zero divisors before this is reached.
struct NonUnitError : Error {
  using Error::Error;
};

// Exhaustive-enumeration routine invoked with p above its cap.
struct SmallPrimeOnlyError : Error {
  using Error::Error;
};

// discriminant_last_var requires a monic (in its last variable) input.
struct NonMonicLeadingError : Error {
  using Error::Error;
};

// Oracle asked to enumerate more points than its budget allows.
struct BudgetExceededError : Error {
  using Error::Error;
};

// Deterministic primality test: trial division by small primes, then
// Miller-Rabin with the fixed base set {2,...,37}. Exact for
// n < 3.317e24; for larger n the same bases are used and primality of
// inputs is a documented validated-input assumption.
bool is_prime(const mpz_class& n);

// Z/(p^t) with p prime, t >= 1. Cheap value type; copies are fine.
class PrimePowerModulus {
 public:
  PrimePowerModulus(mpz_class p, unsigned t);

  const mpz_class& prime() const { return p_; }
  unsigned exponent() const { return t_; }
  const mpz_class& modulus() const { return q_; }  // p^t

  // Canonical representative in [0, p^t).
  mpz_class reduce(const mpz_class& a) const;

  PrimePowerModulus with_exponent(unsigned t) const { return {p_, t}; }
  PrimePowerModulus mod_p() const { return {p_, 1}; }

  bool operator==(const PrimePowerModulus& o) const {
    return t_ == o.t_ && p_ == o.p_;
  }
  bool operator!=(const PrimePowerModulus& o) const { return !(*this == o); }

 private:
  mpz_class p_;
  unsigned t_;
  mpz_class q_;
};

// Residue of Z/(p^t); value is always the canonical representative.
struct Residue {
  mpz_class value;
};

Residue make_residue(const mpz_class& a, const PrimePowerModulus& m);

// n = p^v * unit. n == 0 reports infinite (and unit 0).
struct Valuation {
  bool infinite = false;
  unsigned long v = 0;
  mpz_class unit;
};

Valuation valuation(const mpz_class& n, const mpz_class& p);

// Inverse mod p^t; throws NonUnitError when p | a.
mpz_class inverse(const mpz_class& a, const PrimePowerModulus& m);
Residue inverse(const Residue& a, const PrimePowerModulus& m);

// a^e mod p^t for e >= 0 (arbitrary precision exponent).
mpz_class pow_mod(const mpz_class& a, const mpz_class& e, const PrimePowerModulus& m);
Residue pow_mod(const Residue& a, const mpz_class& e, const PrimePowerModulus& m);

// p^e as an integer (helper used throughout the counting code).
mpz_class pow_ui(const mpz_class& base, unsigned long e);

}  // namespace ptroots
