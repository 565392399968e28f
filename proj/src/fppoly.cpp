#include "ptroots/fppoly.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace ptroots {

FpPolynomial::FpPolynomial(mpz_class p) : p_(std::move(p)) {}

FpPolynomial::FpPolynomial(mpz_class p, std::vector<mpz_class> coeffs)
    : p_(std::move(p)), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p_.get_mpz_t());
  }
  trim();
}

void FpPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class FpPolynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

const mpz_class& FpPolynomial::leading_coeff() const {
  if (coeffs_.empty()) throw Error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

bool FpPolynomial::is_one() const {
  return coeffs_.size() == 1 && coeffs_[0] == 1;
}

bool FpPolynomial::operator==(const FpPolynomial& o) const {
  return p_ == o.p_ && coeffs_ == o.coeffs_;
}

FpPolynomial FpPolynomial::operator+(const FpPolynomial& o) const {
  std::vector<mpz_class> r(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  }
  return {p_, std::move(r)};
}

FpPolynomial FpPolynomial::operator-(const FpPolynomial& o) const {
  std::vector<mpz_class> r(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
  }
  return {p_, std::move(r)};
}

FpPolynomial FpPolynomial::operator*(const FpPolynomial& o) const {
  if (is_zero() || o.is_zero()) return FpPolynomial(p_);
  std::vector<mpz_class> r(coeffs_.size() + o.coeffs_.size() - 1, mpz_class(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      r[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return {p_, std::move(r)};
}

FpPolynomial FpPolynomial::operator*(const mpz_class& c) const {
  std::vector<mpz_class> r = coeffs_;
  for (auto& x : r) x *= c;
  return {p_, std::move(r)};
}

FpPolynomial FpPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return FpPolynomial(p_);
  std::vector<mpz_class> r(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) {
    r[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  }
  return {p_, std::move(r)};
}

FpPolynomial FpPolynomial::make_monic() const {
  if (is_zero()) return *this;
  if (leading_coeff() == 1) return *this;
  PrimePowerModulus m(p_, 1);
  return *this * inverse(leading_coeff(), m);
}

mpz_class FpPolynomial::eval(const mpz_class& a) const {
  mpz_class acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    acc = (acc * a + coeffs_[i]) % p_;
  }
  return acc;
}

FpPolynomial FpPolynomial::constant(const mpz_class& p, const mpz_class& c) {
  return {p, {c}};
}

FpPolynomial FpPolynomial::x(const mpz_class& p) {
  return {p, {mpz_class(0), mpz_class(1)}};
}

FpPolynomial FpPolynomial::monomial(const mpz_class& p, const mpz_class& c, unsigned e) {
  std::vector<mpz_class> v(e + 1, mpz_class(0));
  v[e] = c;
  return {p, std::move(v)};
}

FpDivRem divrem(const FpPolynomial& a, const FpPolynomial& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  const mpz_class& p = a.prime();
  PrimePowerModulus m(p, 1);
  mpz_class lcinv = inverse(b.leading_coeff(), m);
  std::vector<mpz_class> rem = a.coeffs();
  int db = b.degree();
  std::vector<mpz_class> quot;
  if (a.degree() >= db) quot.assign(a.degree() - db + 1, mpz_class(0));
  for (int d = a.degree(); d >= db;) {
    mpz_class c = (rem[d] * lcinv) % p;
    if (c != 0) {
      quot[d - db] = c;
      for (int i = 0; i <= db; ++i) {
        rem[d - db + i] = (rem[d - db + i] - c * b.coeff(i)) % p;
      }
    }
    --d;
    while (d >= db && mpz_sgn(rem[d].get_mpz_t()) == 0) --d;
  }
  return {FpPolynomial(p, std::move(quot)), FpPolynomial(p, std::move(rem))};
}

FpPolynomial divexact(const FpPolynomial& a, const FpPolynomial& b) {
  FpDivRem qr = divrem(a, b);
  if (!qr.remainder.is_zero()) throw Error("inexact polynomial division");
  return qr.quotient;
}

FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b) {
  FpPolynomial r0 = a, r1 = b;
  while (!r1.is_zero()) {
    FpPolynomial r2 = divrem(r0, r1).remainder;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return r0.make_monic();
}

FpPolynomial frobenius_power(const FpPolynomial& f) {
  if (f.degree() < 1) throw Error("frobenius_power needs deg f >= 1");
  const mpz_class& p = f.prime();
  FpPolynomial base = divrem(FpPolynomial::x(p), f).remainder;
  FpPolynomial acc = FpPolynomial::constant(p, 1);
  // plain square-and-multiply on the bits of p
  for (long i = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    acc = divrem(acc * acc, f).remainder;
    if (mpz_tstbit(p.get_mpz_t(), static_cast<unsigned long>(i))) {
      acc = divrem(acc * base, f).remainder;
    }
  }
  return acc;
}

FpPolynomial split_part(const FpPolynomial& f) {
  const mpz_class& p = f.prime();
  if (f.is_zero()) throw Error("split_part of zero polynomial");
  if (f.degree() < 1) return FpPolynomial::constant(p, 1);
  FpPolynomial g = f.make_monic();
  FpPolynomial w = frobenius_power(g) - FpPolynomial::x(p);  // x^p - x mod g
  return gcd(g, w);
}

namespace {

// p-th root of h(x) = c(x^p): coefficientwise, since a^p = a in F_p.
FpPolynomial pth_root(const FpPolynomial& c) {
  unsigned long p = c.prime().get_ui();
  std::vector<mpz_class> r(c.degree() / p + 1, mpz_class(0));
  for (int i = 0; i <= c.degree(); ++i) {
    if (c.coeff(i) == 0) continue;
    if (i % p != 0) throw Error("not a p-th power");
    r[i / p] = c.coeff(i);
  }
  return {c.prime(), std::move(r)};
}

// Squarefree decomposition in characteristic p: factors[i] = product of the
// irreducible factors of f with multiplicity exactly i. Standard Yun-style
// loop; the derivative-blind part (multiplicities divisible by p) is a p-th
// power and is handled by recursing on its p-th root.
void squarefree_decompose(const FpPolynomial& f, unsigned mult_scale,
                          std::map<unsigned, FpPolynomial>& out) {
  if (f.degree() < 1) return;
  FpPolynomial c = gcd(f, f.derivative());
  FpPolynomial w = divexact(f, c);
  unsigned i = 1;
  while (!w.is_one()) {
    FpPolynomial y = gcd(w, c);
    FpPolynomial z = divexact(w, y);
    if (z.degree() >= 1) {
      auto [it, fresh] = out.emplace(i * mult_scale, z);
      if (!fresh) it->second = it->second * z;
    }
    w = std::move(y);
    c = divexact(c, w);
    ++i;
  }
  if (c.degree() >= 1) {
    // c = h(x^p); its factors have multiplicity divisible by p.
    unsigned long p = c.prime().get_ui();
    squarefree_decompose(pth_root(c), mult_scale * static_cast<unsigned>(p), out);
  }
}

}  // namespace

MultiplicityTypeFactorization multiplicity_type_factor(const FpPolynomial& f) {
  if (f.is_zero()) throw Error("multiplicity_type_factor of zero polynomial");
  const mpz_class& p = f.prime();
  MultiplicityTypeFactorization out{f.leading_coeff(), {}, FpPolynomial::constant(p, 1)};
  FpPolynomial g = f.make_monic();
  if (g.degree() < 1) return out;
  if (p.fits_ulong_p()) {
    std::map<unsigned, FpPolynomial> sf;
    squarefree_decompose(g, 1, sf);
    for (auto& [mult, part] : sf) {
      FpPolynomial fi = split_part(part);
      if (fi.degree() >= 1) out.split_parts.push_back({fi, mult});
      FpPolynomial rest = divexact(part, fi);
      for (unsigned j = 0; j < mult; ++j) out.nonlinear = out.nonlinear * rest;
    }
    return out;
  }
  // p too large for the p-th-power corner of the decomposition to occur
  // (it needs multiplicities >= p, impossible below degree p): plain Yun.
  FpPolynomial c = gcd(g, g.derivative());
  FpPolynomial w = divexact(g, c);
  unsigned i = 1;
  while (!w.is_one()) {
    FpPolynomial y = gcd(w, c);
    FpPolynomial z = divexact(w, y);
    if (z.degree() >= 1) {
      FpPolynomial fi = split_part(z);
      if (fi.degree() >= 1) out.split_parts.push_back({fi, i});
      FpPolynomial rest = divexact(z, fi);
      for (unsigned j = 0; j < i; ++j) out.nonlinear = out.nonlinear * rest;
    }
    w = std::move(y);
    c = divexact(c, w);
    ++i;
  }
  return out;
}

std::vector<mpz_class> enumerate_linear_roots(const FpPolynomial& f, unsigned long cap) {
  const mpz_class& p = f.prime();
  if (p > cap) {
    throw SmallPrimeOnlyError("enumeration cap exceeded: p = " + p.get_str());
  }
  std::vector<mpz_class> roots;
  if (f.is_zero()) {
    for (mpz_class r = 0; r < p; ++r) roots.push_back(r);
    return roots;
  }
  for (mpz_class r = 0; r < p; ++r) {
    if (f.eval(r) == 0) roots.push_back(r);
  }
  return roots;
}

}  // namespace ptroots
