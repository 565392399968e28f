#include "ptroots/zptpoly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace ptroots {

namespace {

Monomial padded(const Monomial& m, unsigned arity) {
  Monomial r = m;
  r.resize(arity, 0);
  return r;
}

}  // namespace

ZptPolynomial::ZptPolynomial(PrimePowerModulus mod, unsigned arity)
    : mod_(std::move(mod)), arity_(arity) {}

ZptPolynomial ZptPolynomial::constant(const PrimePowerModulus& mod,
                                      unsigned arity, const mpz_class& c) {
  ZptPolynomial r(mod, arity);
  r.add_term(Monomial(arity, 0), c);
  return r;
}

ZptPolynomial ZptPolynomial::variable(const PrimePowerModulus& mod,
                                      unsigned arity, unsigned var) {
  if (var >= arity) throw Error("variable index out of range");
  Monomial m(arity, 0);
  m[var] = 1;
  ZptPolynomial r(mod, arity);
  r.add_term(std::move(m), 1);
  return r;
}

ZptPolynomial ZptPolynomial::monomial(const PrimePowerModulus& mod,
                                      unsigned arity, Monomial m,
                                      const mpz_class& c) {
  if (m.size() != arity) throw Error("monomial arity mismatch");
  ZptPolynomial r(mod, arity);
  r.add_term(std::move(m), c);
  return r;
}

ZptPolynomial ZptPolynomial::from_univariate(
    const PrimePowerModulus& mod, const std::vector<mpz_class>& coeffs) {
  ZptPolynomial r(mod, 1);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    r.add_term(Monomial{static_cast<unsigned>(i)}, coeffs[i]);
  }
  return r;
}

bool ZptPolynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Monomial& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
}

mpz_class ZptPolynomial::constant_value() const {
  if (!is_constant()) throw Error("constant_value of non-constant polynomial");
  return terms_.empty() ? mpz_class(0) : terms_.begin()->second;
}

mpz_class ZptPolynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(padded(m, arity_));
  return it == terms_.end() ? mpz_class(0) : it->second;
}

int ZptPolynomial::degree_in(unsigned var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) {
    if (var < m.size() && static_cast<int>(m[var]) > d) {
      d = static_cast<int>(m[var]);
    }
  }
  return d;
}

void ZptPolynomial::add_term(Monomial m, const mpz_class& c) {
  if (m.size() != arity_) throw Error("term arity mismatch");
  mpz_class v = mod_.reduce(c);
  if (v == 0) return;
  auto [it, fresh] = terms_.emplace(std::move(m), v);
  if (!fresh) {
    it->second = mod_.reduce(it->second + v);
    if (it->second == 0) terms_.erase(it);
  }
}

ZptPolynomial ZptPolynomial::operator+(const ZptPolynomial& o) const {
  if (mod_ != o.mod_ || arity_ != o.arity_) throw Error("ring mismatch in +");
  ZptPolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

ZptPolynomial ZptPolynomial::operator-(const ZptPolynomial& o) const {
  if (mod_ != o.mod_ || arity_ != o.arity_) throw Error("ring mismatch in -");
  ZptPolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

ZptPolynomial ZptPolynomial::operator*(const ZptPolynomial& o) const {
  if (mod_ != o.mod_ || arity_ != o.arity_) throw Error("ring mismatch in *");
  ZptPolynomial r(mod_, arity_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(arity_);
      for (unsigned i = 0; i < arity_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(std::move(m), ca * cb);
    }
  }
  return r;
}

ZptPolynomial ZptPolynomial::operator*(const mpz_class& c) const {
  ZptPolynomial r(mod_, arity_);
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

ZptPolynomial ZptPolynomial::operator-() const {
  ZptPolynomial r(mod_, arity_);
  for (const auto& [m, v] : terms_) r.add_term(m, -v);
  return r;
}

bool ZptPolynomial::operator==(const ZptPolynomial& o) const {
  return mod_ == o.mod_ && arity_ == o.arity_ && terms_ == o.terms_;
}

ZptPolynomial ZptPolynomial::derivative_in(unsigned var) const {
  ZptPolynomial r(mod_, arity_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(std::move(d), c * m[var]);
  }
  return r;
}

std::vector<ZptPolynomial> ZptPolynomial::coeffs_in(unsigned var) const {
  int d = degree_in(var);
  if (d < 0) return {};
  std::vector<ZptPolynomial> out(static_cast<size_t>(d) + 1,
                                 ZptPolynomial(mod_, arity_));
  for (const auto& [m, c] : terms_) {
    Monomial stripped = m;
    unsigned e = stripped[var];
    stripped[var] = 0;
    out[e].add_term(std::move(stripped), c);
  }
  return out;
}

ZptPolynomial ZptPolynomial::from_coeffs_in(
    unsigned var, const std::vector<ZptPolynomial>& cs) {
  if (cs.empty()) throw Error("from_coeffs_in needs at least one coefficient");
  ZptPolynomial r(cs[0].modulus(), cs[0].arity());
  for (size_t e = 0; e < cs.size(); ++e) {
    for (const auto& [m, c] : cs[e].terms_) {
      Monomial lifted = m;
      lifted[var] += static_cast<unsigned>(e);
      r.add_term(std::move(lifted), c);
    }
  }
  return r;
}

ZptPolynomial ZptPolynomial::with_arity(unsigned k) const {
  ZptPolynomial r(mod_, k);
  for (const auto& [m, c] : terms_) {
    for (size_t i = k; i < m.size(); ++i) {
      if (m[i] != 0) throw Error("with_arity would drop a used variable");
    }
    Monomial nm = m;
    nm.resize(k, 0);
    r.add_term(std::move(nm), c);
  }
  return r;
}

ZptPolynomial ZptPolynomial::reduced_mod_p() const {
  ZptPolynomial r(mod_.mod_p(), arity_);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

ZptPolynomial ZptPolynomial::lifted_to(const PrimePowerModulus& m) const {
  if (m.prime() != mod_.prime()) throw Error("lifted_to changes the prime");
  ZptPolynomial r(m, arity_);
  for (const auto& [mono, c] : terms_) r.add_term(mono, c);
  return r;
}

mpz_class ZptPolynomial::eval(const std::vector<mpz_class>& point) const {
  if (point.size() < arity_) throw Error("eval point arity mismatch");
  mpz_class acc = 0;
  for (const auto& [m, c] : terms_) {
    mpz_class term = c;
    for (unsigned i = 0; i < arity_; ++i) {
      if (m[i] == 0) continue;
      mpz_class pw;
      mpz_powm_ui(pw.get_mpz_t(), point[i].get_mpz_t(), m[i],
                  mod_.modulus().get_mpz_t());
      term = (term * pw) % mod_.modulus();
    }
    acc = (acc + term) % mod_.modulus();
  }
  return mod_.reduce(acc);
}

ZptPolynomial ZptPolynomial::substitute(unsigned var,
                                        const ZptPolynomial& value) const {
  std::vector<ZptPolynomial> cs = coeffs_in(var);
  if (cs.empty()) return *this;
  ZptPolynomial acc(mod_, arity_);
  for (size_t e = cs.size(); e-- > 0;) {
    acc = acc * value + cs[e];
  }
  return acc;
}

std::string ZptPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (unsigned i = 0; i < arity_; ++i) {
      if (m[i] == 0) continue;
      if (has_var) vars << "*";
      has_var = true;
      vars << "x" << (i + 1);
      if (m[i] > 1) vars << "^" << m[i];
    }
    if (!has_var) {
      os << c;
    } else if (c == 1) {
      os << vars.str();
    } else {
      os << c << "*" << vars.str();
    }
  }
  return os.str();
}

ZptPolynomial digit_substitute(const ZptPolynomial& f, unsigned k) {
  if (f.arity() != 1) throw Error("digit_substitute expects univariate input");
  if (k < 1) throw Error("digit_substitute level must be >= 1");
  const PrimePowerModulus& mod = f.modulus();
  if (k + 1 > mod.exponent()) {
    throw Error("digit_substitute level exceeds modulus exponent");
  }
  unsigned arity = k + 1;
  ZptPolynomial x(mod, arity);
  mpz_class pw = 1;
  for (unsigned i = 0; i <= k; ++i) {
    Monomial m(arity, 0);
    m[i] = 1;
    x.add_term(std::move(m), pw);
    pw *= mod.prime();
  }
  std::vector<mpz_class> coeffs(static_cast<size_t>(f.degree_in(0)) + 1, 0);
  for (const auto& [m, c] : f.terms()) coeffs[m[0]] = c;
  ZptPolynomial acc(mod, arity);
  for (size_t e = coeffs.size(); e-- > 0;) {
    acc = acc * x;
    acc.add_term(Monomial(arity, 0), coeffs[e]);
  }
  return acc;
}

ZptPolynomial hasse_derivative(const ZptPolynomial& f, unsigned i) {
  if (f.arity() != 1) throw Error("hasse_derivative expects univariate input");
  ZptPolynomial r(f.modulus(), 1);
  for (const auto& [m, c] : f.terms()) {
    if (m[0] < i) continue;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), m[0], i);
    r.add_term(Monomial{m[0] - i}, c * b);
  }
  return r;
}

TaylorSection taylor_sections(const ZptPolynomial& m, unsigned j) {
  if (j < 1) throw Error("taylor_sections order must be >= 1");
  ZptPolynomial sum(m.modulus(), 2);
  for (unsigned i = 1; i <= j; ++i) {
    ZptPolynomial h = hasse_derivative(m, i).with_arity(2);
    ZptPolynomial y(m.modulus(), 2);
    y.add_term(Monomial{0, i - 1}, 1);
    sum = sum + h * y;
  }
  return {j, sum};
}

ZptPolynomial reduce_mod_triangular(const ZptPolynomial& f,
                                    const std::vector<ZptPolynomial>& gens) {
  ZptPolynomial r = f;
  unsigned levels = static_cast<unsigned>(gens.size());
  if (levels > r.arity()) levels = r.arity();
  for (unsigned v = levels; v-- > 0;) {
    const ZptPolynomial& g = gens[v];
    if (g.arity() > f.arity()) throw Error("generator arity exceeds input");
    int n = g.degree_in(v);
    if (n < 1) throw Error("triangular generator must have positive degree");
    ZptPolynomial gw = g.with_arity(f.arity());
    int d;
    while ((d = r.degree_in(v)) >= n) {
      // lead: all terms of r with exponent d in x_v, that exponent removed.
      ZptPolynomial lead(r.modulus(), r.arity());
      for (const auto& [m, c] : r.terms()) {
        if (static_cast<int>(m[v]) != d) continue;
        Monomial stripped = m;
        stripped[v] = 0;
        lead.add_term(std::move(stripped), c);
      }
      ZptPolynomial shift(r.modulus(), r.arity());
      Monomial sm(r.arity(), 0);
      sm[v] = static_cast<unsigned>(d - n);
      shift.add_term(std::move(sm), 1);
      r = r - lead * shift * gw;
    }
  }
  return r;
}

ValuationSplit extract_valuation(const ZptPolynomial& f,
                                 const std::vector<ZptPolynomial>& gens) {
  const PrimePowerModulus& mod = f.modulus();
  ZptPolynomial r = reduce_mod_triangular(f, gens);
  if (r.is_zero()) return {mod.exponent(), ZptPolynomial(mod, f.arity())};
  unsigned long s = mod.exponent();
  for (const auto& [m, c] : r.terms()) {
    Valuation val = valuation(c, mod.prime());
    if (val.v < s) s = val.v;
    if (s == 0) break;
  }
  if (s == 0) return {0, r};
  // nonzero canonical coefficients have valuation < t, so s < t here and
  // the quotient lives honestly in the smaller modulus
  mpz_class ps = pow_ui(mod.prime(), s);
  ZptPolynomial g(mod.with_exponent(mod.exponent() - static_cast<unsigned>(s)),
                  f.arity());
  for (const auto& [m, c] : r.terms()) {
    g.add_term(m, c / ps);
  }
  return {static_cast<unsigned>(s), g};
}

ZptPolynomial discriminant_last_var(const ZptPolynomial& g,
                                    const std::vector<ZptPolynomial>& gens) {
  if (g.arity() == 0) throw Error("discriminant of a constant");
  unsigned v = g.arity() - 1;
  int n = g.degree_in(v);
  if (n < 1) throw Error("discriminant needs positive degree in the last variable");
  std::vector<ZptPolynomial> cs = g.coeffs_in(v);
  for (auto& c : cs) c = reduce_mod_triangular(c, gens);
  ZptPolynomial lead = cs[static_cast<size_t>(n)];
  if (!lead.is_constant()) {
    throw NonMonicLeadingError("leading coefficient is not constant: " +
                               lead.to_string());
  }
  mpz_class lc = lead.constant_value();
  if (lc != 1) {
    mpz_class inv;
    try {
      inv = inverse(lc, g.modulus());
    } catch (const NonUnitError&) {
      throw NonMonicLeadingError("leading coefficient is not a unit: " +
                                 lc.get_str());
    }
    for (auto& c : cs) c = reduce_mod_triangular(c * inv, gens);
  }
  if (n == 1) return ZptPolynomial::constant(g.modulus(), g.arity(), 1);

  ZptPolynomial gm = ZptPolynomial::from_coeffs_in(v, cs);
  ZptPolynomial dg = gm.derivative_in(v);
  std::vector<ZptPolynomial> dcs = dg.coeffs_in(v);
  dcs.resize(static_cast<size_t>(n), ZptPolynomial(g.modulus(), g.arity()));
  for (auto& c : dcs) c = reduce_mod_triangular(c, gens);

  // Sylvester matrix of gm (degree n, monic) and dg (formal degree n-1):
  // n-1 shifted rows of gm's coefficients, then n rows of dg's. Entries are
  // quotient-ring elements; determinant via the division-free recurrence.
  size_t dim = 2 * static_cast<size_t>(n) - 1;
  TriangularQuotientRing ring{g.modulus(), g.arity(), &gens};
  std::vector<ZptPolynomial> a(dim * dim, ring.zero());
  for (size_t row = 0; row + 1 < static_cast<size_t>(n); ++row) {
    for (size_t j = 0; j <= static_cast<size_t>(n); ++j) {
      a[row * dim + row + j] = cs[static_cast<size_t>(n) - j];
    }
  }
  for (size_t row = 0; row < static_cast<size_t>(n); ++row) {
    for (size_t j = 0; j + 1 <= static_cast<size_t>(n); ++j) {
      a[(static_cast<size_t>(n) - 1 + row) * dim + row + j] =
          dcs[static_cast<size_t>(n) - 1 - j];
    }
  }
  std::vector<ZptPolynomial> cp = charpoly_berkowitz(a, dim, ring);
  ZptPolynomial det = cp[0];
  if (dim % 2 == 1) det = -det;  // det(A) = (-1)^dim * charpoly(0)
  // disc = (-1)^(n(n-1)/2) * resultant (leading coefficient is 1).
  if ((static_cast<unsigned long>(n) * (n - 1) / 2) % 2 == 1) det = -det;
  return reduce_mod_triangular(det, gens);
}

}  // namespace ptroots
