#include "ptroots/triangular.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace ptroots {

namespace {

std::vector<ZptPolynomial> prefix_of(const std::vector<ZptPolynomial>& gens,
                                     unsigned n) {
  return std::vector<ZptPolynomial>(gens.begin(), gens.begin() + n);
}

ZptPolynomial coeff_of(const ZptPolynomial& f, unsigned var, int d) {
  return f.coeffs_in(var)[static_cast<size_t>(d)];
}

// Quotient and remainder of num by den in x_{var+1} over the quotient by the
// triangular prefix; den monic in that variable, so no divisions happen.
std::pair<ZptPolynomial, ZptPolynomial> monic_divrem_in(
    const ZptPolynomial& num, const ZptPolynomial& den, unsigned var,
    const std::vector<ZptPolynomial>& prefix) {
  ZptPolynomial den_w = den.with_arity(num.arity());
  int dn = den_w.degree_in(var);
  ZptPolynomial q(num.modulus(), num.arity());
  ZptPolynomial r = reduce_mod_triangular(num, prefix);
  while (!r.is_zero() && r.degree_in(var) >= dn) {
    int dr = r.degree_in(var);
    Monomial shift(num.arity(), 0);
    shift[var] = static_cast<unsigned>(dr - dn);
    ZptPolynomial term =
        coeff_of(r, var, dr) *
        ZptPolynomial::monomial(num.modulus(), num.arity(), shift, 1);
    q = q + term;
    r = reduce_mod_triangular(r - term * den_w, prefix);
  }
  return {q, r};
}

// Thrown when the extended-gcd ladder exposes a factorization of one of the
// tower generators; caught at the invert_or_split boundary.
struct SplitSignal {
  unsigned level;
  ZptPolynomial h1, h2;
};

// Inverse of u in F_p[x1..x_lvl]/(gens[0..lvl-1]): u nonzero, canonical, only
// variables below lvl. Monic extended Euclid against the top generator, with
// leading coefficients inverted recursively one level down. A positive-degree
// gcd means the top generator factors: SplitSignal.
ZptPolynomial tower_inverse(const ZptPolynomial& u, unsigned lvl,
                            const std::vector<ZptPolynomial>& gens) {
  const PrimePowerModulus& mp = u.modulus();
  if (u.is_constant()) {
    return ZptPolynomial::constant(mp, u.arity(),
                                   inverse(u.constant_value(), mp));
  }
  while (lvl > 0 && u.degree_in(lvl - 1) <= 0) --lvl;
  if (lvl == 0) throw Error("non-constant element claims zero variables");
  unsigned var = lvl - 1;
  unsigned A = u.arity();
  std::vector<ZptPolynomial> pre_var = prefix_of(gens, var);
  std::vector<ZptPolynomial> pre_lvl = prefix_of(gens, lvl);

  ZptPolynomial r0 = gens[var].with_arity(A);
  ZptPolynomial t0(mp, A);
  ZptPolynomial r1 = u;
  ZptPolynomial t1 = ZptPolynomial::constant(mp, A, 1);
  while (true) {
    if (r1.is_zero()) {
      // r0 is a monic proper factor of the top generator.
      auto [q, rem] = monic_divrem_in(gens[var].with_arity(A), r0, var,
                                      pre_var);
      if (!rem.is_zero()) throw Error("split cofactor division left a remainder");
      throw SplitSignal{var, r0.with_arity(var + 1), q.with_arity(var + 1)};
    }
    if (r1.degree_in(var) == 0) {
      // Nonzero element of the lower tower: gcd is a unit there.
      ZptPolynomial low = tower_inverse(r1, var, gens);
      return reduce_mod_triangular(low * t1, pre_lvl);
    }
    int d1 = r1.degree_in(var);
    ZptPolynomial li = tower_inverse(coeff_of(r1, var, d1), var, gens);
    ZptPolynomial r1m = reduce_mod_triangular(r1 * li, pre_var);
    ZptPolynomial t1m = reduce_mod_triangular(t1 * li, pre_var);
    auto [q, r2] = monic_divrem_in(r0, r1m, var, pre_var);
    ZptPolynomial t2 = reduce_mod_triangular(t0 - q * t1m, pre_var);
    r0 = std::move(r1m);
    t0 = std::move(t1m);
    r1 = std::move(r2);
    t1 = std::move(t2);
  }
}

int compare_poly(const ZptPolynomial& a, const ZptPolynomial& b) {
  MonomialOrder ord;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ord(ia->first, ib->first)) return -1;
    if (ord(ib->first, ia->first)) return 1;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (ib != b.terms().end()) return -1;
  if (ia != a.terms().end()) return 1;
  return 0;
}

void sort_ideals(std::vector<TriangularIdeal>& v) {
  std::sort(v.begin(), v.end(),
            [](const TriangularIdeal& a, const TriangularIdeal& b) {
              return compare_ideals(a, b) < 0;
            });
}

}  // namespace

ZptPolynomial to_zpt(const FpPolynomial& f, const PrimePowerModulus& mod,
                     unsigned arity, unsigned var) {
  if (var >= arity) throw Error("variable index out of range");
  ZptPolynomial r(mod, arity);
  for (size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] == 0) continue;
    Monomial m(arity, 0);
    m[var] = static_cast<unsigned>(i);
    r.add_term(std::move(m), f.coeffs()[i]);
  }
  return r;
}

FpPolynomial to_fp_univariate(const ZptPolynomial& f, unsigned var) {
  int d = f.degree_in(var);
  std::vector<mpz_class> dense(d >= 0 ? static_cast<size_t>(d) + 1 : 0, 0);
  for (const auto& [m, c] : f.terms()) {
    for (unsigned i = 0; i < f.arity(); ++i) {
      if (i != var && m[i] != 0) {
        throw Error("polynomial is not univariate in the requested variable");
      }
    }
    dense[m[var]] = c;
  }
  return FpPolynomial(f.modulus().prime(), std::move(dense));
}

std::vector<unsigned> TriangularIdeal::degrees() const {
  std::vector<unsigned> d;
  d.reserve(gens.size());
  for (unsigned i = 0; i < gens.size(); ++i) {
    d.push_back(static_cast<unsigned>(gens[i].degree_in(i)));
  }
  return d;
}

mpz_class TriangularIdeal::point_count() const {
  mpz_class n = 1;
  for (unsigned i = 0; i < gens.size(); ++i) n *= gens[i].degree_in(i);
  return n;
}

TriangularIdeal TriangularIdeal::mod_p() const {
  TriangularIdeal r{modulus.mod_p(), {}};
  r.gens.reserve(gens.size());
  for (const auto& g : gens) r.gens.push_back(g.reduced_mod_p());
  return r;
}

ZptPolynomial TriangularIdeal::reduce(const ZptPolynomial& f) const {
  return reduce_mod_triangular(f, gens);
}

void TriangularIdeal::validate() const {
  for (unsigned i = 0; i < gens.size(); ++i) {
    const ZptPolynomial& g = gens[i];
    if (g.arity() != i + 1) throw Error("generator arity must match its level");
    if (g.modulus().modulus() != modulus.modulus()) {
      throw Error("generator modulus mismatch");
    }
    int n = g.degree_in(i);
    if (n < 1) {
      throw Error("generator needs positive degree in its own variable");
    }
    ZptPolynomial lead = coeff_of(g, i, n);
    if (!(lead.is_constant() && lead.constant_value() == 1)) {
      throw NonMonicLeadingError("level " + std::to_string(i + 1) +
                                 " generator is not monic: leading coefficient " +
                                 lead.to_string());
    }
    if (reduce_mod_triangular(g, prefix_of(gens, i)) != g) {
      throw Error("generator is not reduced by the earlier levels");
    }
  }
}

int compare_ideals(const TriangularIdeal& a, const TriangularIdeal& b) {
  if (a.gens.size() != b.gens.size()) {
    return a.gens.size() < b.gens.size() ? -1 : 1;
  }
  std::vector<unsigned> da = a.degrees();
  std::vector<unsigned> db = b.degrees();
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = 0; i < a.gens.size(); ++i) {
    int c = compare_poly(a.gens[i], b.gens[i]);
    if (c != 0) return c;
  }
  return 0;
}

QuasiInverse invert_or_split(const ZptPolynomial& a, const TriangularIdeal& I) {
  unsigned k = I.level();
  unsigned A = std::max(a.arity(), k == 0 ? 1u : k);
  TriangularIdeal Ip = I.mod_p();
  ZptPolynomial abar =
      reduce_mod_triangular(a.reduced_mod_p().with_arity(A), Ip.gens);
  for (unsigned v = k; v < A; ++v) {
    if (abar.degree_in(v) > 0) {
      throw Error("element uses a variable outside the tower");
    }
  }
  if (abar.is_zero()) {
    return {QuasiInverse::Kind::ZeroElement, ZptPolynomial(Ip.modulus, A), {}};
  }
  ZptPolynomial inv_p(Ip.modulus, A);
  try {
    inv_p = tower_inverse(abar, k, Ip.gens);
  } catch (const SplitSignal& s) {
    auto build = [&](const ZptPolynomial& h) {
      TriangularIdeal J{Ip.modulus, {}};
      for (unsigned i = 0; i < s.level; ++i) J.gens.push_back(Ip.gens[i]);
      J.gens.push_back(h);
      for (unsigned i = s.level + 1; i < k; ++i) {
        J.gens.push_back(reduce_mod_triangular(Ip.gens[i], J.gens));
      }
      return J;
    };
    std::vector<TriangularIdeal> parts{build(s.h1), build(s.h2)};
    sort_ideals(parts);
    return {QuasiInverse::Kind::SplitFound, ZptPolynomial(Ip.modulus, A),
            std::move(parts)};
  }
  unsigned t = I.modulus.exponent();
  if (t == 1) {
    return {QuasiInverse::Kind::Inverted, std::move(inv_p), {}};
  }
  // Newton lift of the mod-p inverse: u <- u(2 - a u) doubles the precision.
  ZptPolynomial u = inv_p.lifted_to(I.modulus);
  ZptPolynomial ared = I.reduce(a.with_arity(A));
  ZptPolynomial two = ZptPolynomial::constant(I.modulus, A, 2);
  for (unsigned reach = 1; reach < t; reach *= 2) {
    u = I.reduce(u * (two - ared * u));
  }
  return {QuasiInverse::Kind::Inverted, std::move(u), {}};
}

ZptPolynomial frobenius_section(const TriangularIdeal& I,
                                const ZptPolynomial& f) {
  unsigned k = I.level();
  if (f.arity() != k + 1) throw Error("section polynomial arity mismatch");
  if (f.degree_in(k) < 1) {
    throw Error("section needs positive degree in the top variable");
  }
  std::vector<ZptPolynomial> gens = I.gens;
  gens.push_back(f);
  const PrimePowerModulus& mp = f.modulus();
  ZptPolynomial x = ZptPolynomial::variable(mp, k + 1, k);
  const mpz_class& p = mp.prime();
  size_t nbits = mpz_sizeinbase(p.get_mpz_t(), 2);
  ZptPolynomial acc = x;
  for (size_t i = nbits - 1; i-- > 0;) {
    acc = reduce_mod_triangular(acc * acc, gens);
    if (mpz_tstbit(p.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      acc = reduce_mod_triangular(acc * x, gens);
    }
  }
  return reduce_mod_triangular(acc - x, gens);
}

std::vector<SiftedPart> sift_vanishing(const ZptPolynomial& a,
                                       const TriangularIdeal& I) {
  std::vector<SiftedPart> out;
  std::vector<TriangularIdeal> work{I.mod_p()};
  while (!work.empty()) {
    TriangularIdeal J = std::move(work.back());
    work.pop_back();
    unsigned A = std::max(a.arity(), std::max(J.level(), 1u));
    ZptPolynomial ar =
        reduce_mod_triangular(a.reduced_mod_p().with_arity(A), J.gens);
    if (ar.is_zero()) {
      out.push_back({std::move(J), true});
      continue;
    }
    QuasiInverse qi = invert_or_split(ar, J);
    switch (qi.kind) {
      case QuasiInverse::Kind::Inverted:
        out.push_back({std::move(J), false});
        break;
      case QuasiInverse::Kind::SplitFound:
        for (auto& part : qi.parts) work.push_back(std::move(part));
        break;
      case QuasiInverse::Kind::ZeroElement:
        throw Error("canonical nonzero element reduced to zero");
    }
  }
  std::sort(out.begin(), out.end(), [](const SiftedPart& x, const SiftedPart& y) {
    return compare_ideals(x.component, y.component) < 0;
  });
  return out;
}

std::vector<GcdComponent> d5_gcd(const ZptPolynomial& a, const ZptPolynomial& b,
                                 const TriangularIdeal& I, unsigned var) {
  unsigned A = std::max({a.arity(), b.arity(), var + 1});
  PrimePowerModulus mp = I.modulus.mod_p();
  struct Item {
    TriangularIdeal J;
    ZptPolynomial lhs, rhs;
  };
  std::vector<Item> work;
  work.push_back({I.mod_p(), a.reduced_mod_p().with_arity(A),
                  b.reduced_mod_p().with_arity(A)});
  std::vector<GcdComponent> out;
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    TriangularIdeal J = std::move(item.J);
    ZptPolynomial lhs = J.reduce(item.lhs);
    ZptPolynomial rhs = J.reduce(item.rhs);
    while (true) {
      if (rhs.is_zero()) {
        if (lhs.is_zero()) {
          out.push_back({std::move(J), std::move(lhs)});
          break;
        }
        if (lhs.degree_in(var) == 0) {
          // gcd(c, 0): 1 where c is a unit, 0 where c vanishes.
          for (auto& part : sift_vanishing(lhs, J)) {
            out.push_back({std::move(part.component),
                           part.vanishes
                               ? ZptPolynomial(mp, A)
                               : ZptPolynomial::constant(mp, A, 1)});
          }
          break;
        }
        int d = lhs.degree_in(var);
        QuasiInverse qi = invert_or_split(coeff_of(lhs, var, d), J);
        if (qi.kind == QuasiInverse::Kind::SplitFound) {
          for (auto& part : qi.parts) work.push_back({std::move(part), lhs, rhs});
          break;
        }
        if (qi.kind != QuasiInverse::Kind::Inverted) {
          throw Error("canonical leading coefficient reduced to zero");
        }
        ZptPolynomial monic = J.reduce(lhs * qi.inverse);
        out.push_back({std::move(J), std::move(monic)});
        break;
      }
      int dB = rhs.degree_in(var);
      if (dB == 0) {
        for (auto& part : sift_vanishing(rhs, J)) {
          if (part.vanishes) {
            work.push_back({std::move(part.component), lhs,
                            ZptPolynomial(mp, A)});
          } else {
            out.push_back({std::move(part.component),
                           ZptPolynomial::constant(mp, A, 1)});
          }
        }
        break;
      }
      QuasiInverse qi = invert_or_split(coeff_of(rhs, var, dB), J);
      if (qi.kind == QuasiInverse::Kind::SplitFound) {
        for (auto& part : qi.parts) work.push_back({std::move(part), lhs, rhs});
        break;
      }
      if (qi.kind != QuasiInverse::Kind::Inverted) {
        throw Error("canonical leading coefficient reduced to zero");
      }
      ZptPolynomial monic = J.reduce(rhs * qi.inverse);
      auto [q, rem] = monic_divrem_in(lhs, monic, var, J.gens);
      lhs = std::move(monic);
      rhs = std::move(rem);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GcdComponent& x, const GcdComponent& y) {
              return compare_ideals(x.component, y.component) < 0;
            });
  return out;
}

std::vector<std::vector<mpz_class>> enumerate_points(const TriangularIdeal& I,
                                                     unsigned long cap) {
  std::vector<std::vector<mpz_class>> pts{{}};
  for (unsigned i = 0; i < I.level(); ++i) {
    std::vector<std::vector<mpz_class>> next;
    std::vector<ZptPolynomial> cs = I.gens[i].reduced_mod_p().coeffs_in(i);
    for (const auto& pt : pts) {
      std::vector<mpz_class> padded = pt;
      padded.resize(i + 1, 0);
      std::vector<mpz_class> dense;
      dense.reserve(cs.size());
      for (const auto& c : cs) dense.push_back(c.eval(padded));
      FpPolynomial fu(I.modulus.prime(), std::move(dense));
      for (const auto& r : enumerate_linear_roots(fu, cap)) {
        if (next.size() >= cap) {
          throw SmallPrimeOnlyError("point enumeration cap exceeded");
        }
        std::vector<mpz_class> ext = pt;
        ext.push_back(r);
        next.push_back(std::move(ext));
      }
    }
    pts = std::move(next);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

LexBasis build_lex_basis(const std::vector<std::vector<mpz_class>>& points,
                         unsigned arity, const mpz_class& p) {
  PrimePowerModulus mp(p, 1);
  size_t n = points.size();
  if (n == 0) {
    return {arity, p, {ZptPolynomial::constant(mp, arity, 1)}};
  }
  std::set<Monomial, MonomialOrder> queue;
  queue.insert(Monomial(arity, 0));
  std::vector<Monomial> leads;
  std::vector<ZptPolynomial> gb;
  std::vector<std::vector<mpz_class>> vecs;
  std::vector<size_t> pivots;
  std::vector<ZptPolynomial> combos;
  while (!queue.empty()) {
    Monomial m = *queue.begin();
    queue.erase(queue.begin());
    bool blocked = false;
    for (const Monomial& l : leads) {
      bool div = true;
      for (unsigned i = 0; i < arity; ++i) {
        if (m[i] < l[i]) {
          div = false;
          break;
        }
      }
      if (div) {
        blocked = true;
        break;
      }
    }
    if (blocked) continue;
    std::vector<mpz_class> v(n);
    for (size_t i = 0; i < n; ++i) {
      mpz_class acc = 1;
      for (unsigned j = 0; j < arity; ++j) {
        if (m[j] == 0) continue;
        mpz_class pw;
        mpz_powm_ui(pw.get_mpz_t(), points[i][j].get_mpz_t(), m[j],
                    p.get_mpz_t());
        acc = (acc * pw) % p;
      }
      v[i] = acc;
    }
    ZptPolynomial poly = ZptPolynomial::monomial(mp, arity, m, 1);
    for (size_t r = 0; r < vecs.size(); ++r) {
      if (v[pivots[r]] == 0) continue;
      mpz_class scale =
          (v[pivots[r]] * inverse(vecs[r][pivots[r]], mp)) % p;
      for (size_t j = 0; j < n; ++j) {
        v[j] = ((v[j] - scale * vecs[r][j]) % p + p) % p;
      }
      poly = poly - combos[r] * scale;
    }
    size_t piv = 0;
    while (piv < n && v[piv] == 0) ++piv;
    if (piv == n) {
      gb.push_back(std::move(poly));
      leads.push_back(std::move(m));
    } else {
      pivots.push_back(piv);
      vecs.push_back(std::move(v));
      combos.push_back(std::move(poly));
      for (unsigned i = 0; i < arity; ++i) {
        Monomial m2 = m;
        ++m2[i];
        queue.insert(std::move(m2));
      }
    }
  }
  return {arity, p, std::move(gb)};
}

IdealChain leading_coeff_chain(const LexBasis& basis) {
  if (basis.arity == 0) throw Error("chain needs at least one variable");
  unsigned last = basis.arity - 1;
  std::set<unsigned> degs{0};
  for (const auto& e : basis.elements) {
    int d = e.degree_in(last);
    if (d < 0) throw Error("zero element in a lex basis");
    degs.insert(static_cast<unsigned>(d));
  }
  IdealChain chain{basis.arity - 1, basis.p, {}};
  for (unsigned d : degs) {
    IdealChain::Link link{d, {}};
    for (const auto& e : basis.elements) {
      int de = e.degree_in(last);
      if (de <= static_cast<int>(d)) {
        link.lc_gens.push_back(
            coeff_of(e, last, de).with_arity(basis.arity - 1));
      }
    }
    chain.links.push_back(std::move(link));
  }
  return chain;
}

namespace {

// Pairwise-coprime splitting triangular cover of a finite distinct point
// set. Points are stratified by fiber size over their prefix; each stratum's
// prefixes decompose recursively, and the stratum's top generator is glued
// across a base component with Fermat one-point indicators.
std::vector<TriangularIdeal> points_to_splitting_ideals(
    const std::vector<std::vector<mpz_class>>& points, unsigned arity,
    const mpz_class& p) {
  std::vector<TriangularIdeal> out;
  if (points.empty()) return out;
  PrimePowerModulus mp(p, 1);
  if (arity == 0) {
    out.push_back({mp, {}});
    return out;
  }
  std::map<std::vector<mpz_class>, std::vector<mpz_class>> fibers;
  for (const auto& pt : points) {
    std::vector<mpz_class> prefix(pt.begin(), pt.end() - 1);
    fibers[std::move(prefix)].push_back(pt.back());
  }
  std::map<size_t, std::vector<std::vector<mpz_class>>> by_size;
  for (const auto& [prefix, ys] : fibers) {
    by_size[ys.size()].push_back(prefix);
  }
  for (const auto& [s, prefixes] : by_size) {
    for (TriangularIdeal& base :
         points_to_splitting_ideals(prefixes, arity - 1, p)) {
      std::vector<std::vector<mpz_class>> covered = enumerate_points(base);
      ZptPolynomial h(mp, arity);
      for (const auto& q : covered) {
        // Fermat indicator of q over the base component.
        ZptPolynomial e = ZptPolynomial::constant(mp, arity, 1);
        for (unsigned l = 0; l + 1 < arity; ++l) {
          ZptPolynomial d = ZptPolynomial::variable(mp, arity, l) -
                            ZptPolynomial::constant(mp, arity, q[l]);
          ZptPolynomial fermat = ZptPolynomial::constant(mp, arity, 1);
          mpz_class e_exp = p - 1;
          ZptPolynomial sq = d;
          while (e_exp > 0) {
            if (mpz_odd_p(e_exp.get_mpz_t())) {
              fermat = reduce_mod_triangular(fermat * sq, base.gens);
            }
            e_exp >>= 1;
            if (e_exp > 0) sq = reduce_mod_triangular(sq * sq, base.gens);
          }
          e = reduce_mod_triangular(
              e * (ZptPolynomial::constant(mp, arity, 1) - fermat), base.gens);
        }
        ZptPolynomial fq = ZptPolynomial::constant(mp, arity, 1);
        for (const auto& y : fibers.at(q)) {
          fq = fq * (ZptPolynomial::variable(mp, arity, arity - 1) -
                     ZptPolynomial::constant(mp, arity, y));
        }
        h = h + reduce_mod_triangular(e * fq, base.gens);
      }
      TriangularIdeal comp = base;
      comp.gens.push_back(reduce_mod_triangular(h, base.gens));
      out.push_back(std::move(comp));
    }
  }
  sort_ideals(out);
  return out;
}

std::vector<std::vector<mpz_class>> base_grid(unsigned arity,
                                              const mpz_class& p) {
  mpz_class total = 1;
  for (unsigned i = 0; i < arity; ++i) {
    total *= p;
    if (total > (1u << 20)) {
      throw SmallPrimeOnlyError("base grid enumeration cap exceeded");
    }
  }
  std::vector<std::vector<mpz_class>> grid{{}};
  for (unsigned i = 0; i < arity; ++i) {
    std::vector<std::vector<mpz_class>> next;
    next.reserve(grid.size() * mpz_get_ui(p.get_mpz_t()));
    for (const auto& pt : grid) {
      for (mpz_class v = 0; v < p; ++v) {
        std::vector<mpz_class> ext = pt;
        ext.push_back(v);
        next.push_back(std::move(ext));
      }
    }
    grid = std::move(next);
  }
  return grid;
}

}  // namespace

std::vector<TriangularIdeal> colon_decompose(const IdealChain& chain) {
  if (chain.links.size() < 2) return {};
  std::vector<std::vector<mpz_class>> grid =
      base_grid(chain.base_arity, chain.p);
  auto solves = [&](const IdealChain::Link& link,
                    const std::vector<mpz_class>& pt) {
    for (const auto& g : link.lc_gens) {
      if (g.eval(pt) != 0) return false;
    }
    return true;
  };
  std::vector<TriangularIdeal> out;
  for (size_t a = 0; a + 1 < chain.links.size(); ++a) {
    std::vector<std::vector<mpz_class>> stratum;
    for (const auto& pt : grid) {
      if (solves(chain.links[a], pt) && !solves(chain.links[a + 1], pt)) {
        stratum.push_back(pt);
      }
    }
    for (auto& comp :
         points_to_splitting_ideals(stratum, chain.base_arity, chain.p)) {
      out.push_back(std::move(comp));
    }
  }
  return out;
}

SplittingCertificate rational_radical_extend(const TriangularIdeal& I,
                                             const ZptPolynomial& f) {
  unsigned k = I.level();
  unsigned var = k;
  TriangularIdeal Ip = I.mod_p();
  ZptPolynomial fbar = Ip.reduce(f.reduced_mod_p().with_arity(k + 1));
  int n = fbar.degree_in(var);
  if (n < 1) throw Error("radical extension needs positive top degree");
  ZptPolynomial lead = coeff_of(fbar, var, n);
  if (!(lead.is_constant() && lead.constant_value() == 1)) {
    throw NonMonicLeadingError("leading coefficient is not monic: " +
                               lead.to_string());
  }
  const mpz_class& p = Ip.modulus.prime();
  std::vector<GcdComponent> pieces;
  bool small_route = p <= 13;
  if (small_route) {
    mpz_class grid = 1;
    for (unsigned i = 0; i < k && small_route; ++i) {
      grid *= p;
      if (grid > (1u << 20)) small_route = false;
    }
  }
  if (small_route) {
    // Small prime: enumerate the solutions, rebuild their vanishing ideal,
    // stratify the base by extension count, then re-pair each stratum.
    std::vector<std::vector<mpz_class>> sols;
    std::vector<ZptPolynomial> cs = fbar.coeffs_in(var);
    for (const auto& pt : enumerate_points(Ip)) {
      std::vector<mpz_class> padded = pt;
      padded.resize(k + 1, 0);
      std::vector<mpz_class> dense;
      dense.reserve(cs.size());
      for (const auto& c : cs) dense.push_back(c.eval(padded));
      FpPolynomial fu(p, std::move(dense));
      for (const auto& r : enumerate_linear_roots(fu)) {
        std::vector<mpz_class> ext = pt;
        ext.push_back(r);
        sols.push_back(std::move(ext));
      }
    }
    if (sols.empty()) return {};
    LexBasis basis = build_lex_basis(sols, k + 1, p);
    IdealChain chain = leading_coeff_chain(basis);
    for (const TriangularIdeal& stratum : colon_decompose(chain)) {
      ZptPolynomial fs = stratum.reduce(fbar);
      ZptPolynomial fr = frobenius_section(stratum, fs);
      for (auto& piece : d5_gcd(fs, fr, stratum, var)) {
        pieces.push_back(std::move(piece));
      }
    }
  } else {
    ZptPolynomial fr = frobenius_section(Ip, fbar);
    pieces = d5_gcd(fbar, fr, Ip, var);
  }
  SplittingCertificate cert;
  for (auto& [component, h] : pieces) {
    if (h.degree_in(var) < 1) continue;
    TriangularIdeal comp = std::move(component);
    comp.gens.push_back(h.with_arity(k + 1));
    cert.components.push_back(std::move(comp));
  }
  sort_ideals(cert.components);
  return cert;
}

std::vector<std::pair<TriangularIdeal, unsigned>> multiplicity_by_derivatives(
    const TriangularIdeal& J, const ZptPolynomial& f) {
  unsigned k = J.level();
  unsigned var = k;
  TriangularIdeal Jp = J.mod_p();
  ZptPolynomial fbar = Jp.reduce(f.reduced_mod_p().with_arity(k + 1));
  int n = fbar.degree_in(var);
  if (n < 1) throw Error("multiplicity probe needs positive top degree");
  SplittingCertificate cert = rational_radical_extend(Jp, fbar);
  const mpz_class& p = Jp.modulus.prime();
  unsigned cap = static_cast<unsigned>(n);
  if (p - 1 < n) cap = static_cast<unsigned>(mpz_get_ui(p.get_mpz_t())) - 1;
  std::vector<ZptPolynomial> ders{fbar};
  for (unsigned j = 1; j < cap; ++j) {
    ders.push_back(ders.back().derivative_in(var));
  }
  std::vector<std::pair<TriangularIdeal, unsigned>> out;
  for (const TriangularIdeal& root : cert.components) {
    std::vector<std::pair<TriangularIdeal, unsigned>> work{{root, 1}};
    while (!work.empty()) {
      auto [comp, j] = std::move(work.back());
      work.pop_back();
      if (j >= cap) {
        out.push_back({std::move(comp), cap});
        continue;
      }
      ZptPolynomial d = comp.reduce(ders[j]);
      if (d.is_zero()) {
        work.push_back({std::move(comp), j + 1});
        continue;
      }
      for (auto& part : sift_vanishing(d, comp)) {
        if (part.vanishes) {
          work.push_back({std::move(part.component), j + 1});
        } else {
          out.push_back({std::move(part.component), j});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const std::pair<TriangularIdeal, unsigned>& x,
               const std::pair<TriangularIdeal, unsigned>& y) {
              return compare_ideals(x.first, y.first) < 0;
            });
  return out;
}

SplittingCertificate decompose_with_multiplicity(const TriangularIdeal& I,
                                                 const ZptPolynomial& f) {
  SplittingCertificate cert;
  for (auto& [comp, mult] : multiplicity_by_derivatives(I, f)) {
    cert.components.push_back(std::move(comp));
    cert.multiplicities.push_back(mult);
  }
  return cert;
}

}  // namespace ptroots
