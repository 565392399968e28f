#include "ptroots/modarith.hpp"

namespace ptroots {

namespace {

const unsigned long kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                      31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                      73, 79, 83, 89, 97};

// Fixed Miller-Rabin bases; deterministic for n < 3.317e24.
const unsigned long kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_round(const mpz_class& n, const mpz_class& base,
                        const mpz_class& d, unsigned long r) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned long sp : kSmallPrimes) {
    if (n == sp) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) return false;
  }
  // n > 97 and has no small prime factor; write n - 1 = 2^r * d.
  mpz_class d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
  for (unsigned long b : kMrBases) {
    if (!miller_rabin_round(n, mpz_class(b), d, r)) return false;
  }
  return true;
}

PrimePowerModulus::PrimePowerModulus(mpz_class p, unsigned t)
    : p_(std::move(p)), t_(t) {
  if (t_ < 1) throw InvalidModulusError("modulus exponent must be >= 1");
  if (!is_prime(p_)) {
    throw InvalidModulusError(p_.get_str() + " is not prime");
  }
  mpz_pow_ui(q_.get_mpz_t(), p_.get_mpz_t(), t_);
}

mpz_class PrimePowerModulus::reduce(const mpz_class& a) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), q_.get_mpz_t());
  return r;
}

Residue make_residue(const mpz_class& a, const PrimePowerModulus& m) {
  return Residue{m.reduce(a)};
}

Valuation valuation(const mpz_class& n, const mpz_class& p) {
  Valuation out;
  if (n == 0) {
    out.infinite = true;
    out.unit = 0;
    return out;
  }
  out.v = mpz_remove(out.unit.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return out;
}

mpz_class inverse(const mpz_class& a, const PrimePowerModulus& m) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.modulus().get_mpz_t())) {
    throw NonUnitError("not a unit mod " + m.prime().get_str() + "^" +
                       std::to_string(m.exponent()));
  }
  return r;
}

Residue inverse(const Residue& a, const PrimePowerModulus& m) {
  return Residue{inverse(a.value, m)};
}

mpz_class pow_mod(const mpz_class& a, const mpz_class& e, const PrimePowerModulus& m) {
  if (e < 0) throw Error("pow_mod requires a nonnegative exponent");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.modulus().get_mpz_t());
  return r;
}

Residue pow_mod(const Residue& a, const mpz_class& e, const PrimePowerModulus& m) {
  return Residue{pow_mod(a.value, e, m)};
}

mpz_class pow_ui(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace ptroots
