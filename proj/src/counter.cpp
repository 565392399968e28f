#include "ptroots/counter.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <mutex>
#include <numeric>
#include <optional>
#include <utility>

#include "ptroots/teichmuller.hpp"
#include "ptroots/triangular.hpp"

namespace ptroots {

namespace {

// ---------------------------------------------------------------------------
// t = 3 helpers

// Inverse of c modulo m over F_p by the extended Euclid ladder. Requires
// gcd(c, m) = 1.
FpPolynomial fp_invert_mod(const FpPolynomial& c, const FpPolynomial& m) {
  const mpz_class p = m.prime();
  PrimePowerModulus mp(p, 1);
  FpPolynomial r0 = m, r1 = divrem(c, m).remainder;
  FpPolynomial t0(p), t1(p, {1});
  while (!r1.is_zero() && r1.degree() > 0) {
    auto qr = divrem(r0, r1);
    FpPolynomial t2 = t0 - qr.quotient * t1;
    r0 = r1;
    r1 = qr.remainder;
    t0 = t1;
    t1 = t2;
  }
  if (r1.is_zero()) throw Error("element is not invertible modulo m");
  mpz_class scale = inverse(r1.coeff(0), mp);
  return t1 * FpPolynomial(p, {scale});
}

// Resultant of a and b over F_p by the Euclid ladder with the standard
// sign and leading-coefficient bookkeeping.
mpz_class fp_resultant(FpPolynomial a, FpPolynomial b) {
  const mpz_class p = a.prime();
  PrimePowerModulus mp(p, 1);
  if (a.is_zero() || b.is_zero()) return 0;
  mpz_class res = 1;
  bool neg = false;
  while (true) {
    if (b.degree() == 0) {
      res = res * pow_mod(b.coeff(0), mpz_class(a.degree()), mp) % p;
      break;
    }
    auto qr = divrem(a, b);
    if (qr.remainder.is_zero()) return 0;
    int da = a.degree(), db = b.degree(), dr = qr.remainder.degree();
    if ((da & 1) && (db & 1)) neg = !neg;
    res = res * pow_mod(b.leading_coeff(), mpz_class(da - dr), mp) % p;
    a = b;
    b = qr.remainder;
  }
  if (neg && res != 0) res = p - res;
  return res;
}

struct FpPolyRing {
  using Elem = FpPolynomial;
  mpz_class p;
  Elem zero() const { return FpPolynomial(p); }
  Elem one() const { return FpPolynomial(p, {1}); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
};

// Number of F_p-roots of d counted with multiplicity: strip the distinct
// roots off one layer at a time with gcd(d, x^p - x).
mpz_class count_with_multiplicity(FpPolynomial d) {
  mpz_class e = 0;
  while (d.degree() > 0) {
    FpPolynomial layer = split_part(d);
    if (layer.degree() <= 0) break;
    e += layer.degree();
    d = divexact(d, layer);
  }
  return e;
}

// Dense coefficient column of length n.
std::vector<mpz_class> padded_coeffs(const FpPolynomial& f, int n) {
  std::vector<mpz_class> out(n, 0);
  for (int i = 0; i <= f.degree() && i < n; ++i) out[i] = f.coeff(i);
  return out;
}

// det g(M, x2) for the companion matrix M of m, as a polynomial in x2:
// division-free Berkowitz over F_p[x2], evaluated at lambda = 0.
FpPolynomial det_g_of_companion(const FpPolynomial& m, const FpPolynomial& c0,
                                const FpPolynomial& c1) {
  const mpz_class p = m.prime();
  const int n = m.degree();
  // Columns of c(M): coordinates of c * x^j mod m.
  auto mat_of = [&](const FpPolynomial& c) {
    std::vector<std::vector<mpz_class>> cols(n);
    FpPolynomial w = divrem(c, m).remainder;
    FpPolynomial x(p, {0, 1});
    for (int j = 0; j < n; ++j) {
      cols[j] = padded_coeffs(w, n);
      w = divrem(w * x, m).remainder;
    }
    return cols;
  };
  auto m0 = mat_of(c0);
  auto m1 = mat_of(c1);
  std::vector<FpPolynomial> a;
  a.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<mpz_class> cs = {m0[j][i], m1[j][i], i == j ? 1 : 0};
      a.push_back(FpPolynomial(p, cs));
    }
  }
  FpPolyRing ring{p};
  auto cp = charpoly_berkowitz(a, static_cast<std::size_t>(n), ring);
  FpPolynomial det = cp[0];
  if (n & 1) det = FpPolynomial(p) - det;
  return det;
}

// The same determinant by evaluation at x2 = 0..2n and Lagrange
// interpolation; needs p > 2n distinct sample points.
FpPolynomial det_by_evaluation(const FpPolynomial& m, const ZptPolynomial& g) {
  const mpz_class p = m.prime();
  PrimePowerModulus mp(p, 1);
  const int n = m.degree();
  const int npts = 2 * n + 1;
  std::vector<mpz_class> values(npts);
  FpPolynomial master(p, {1});
  for (int j = 0; j < npts; ++j) {
    ZptPolynomial gj = g.substitute(
        1, ZptPolynomial::constant(g.modulus(), g.arity(), mpz_class(j)));
    values[j] = fp_resultant(m, to_fp_univariate(gj.with_arity(1), 0));
    master = master * FpPolynomial(p, {p - (mpz_class(j) % p), 1});
  }
  FpPolynomial deriv = master.derivative();
  FpPolynomial det(p);
  for (int j = 0; j < npts; ++j) {
    FpPolynomial basis = divexact(master, FpPolynomial(p, {p - (mpz_class(j) % p), 1}));
    mpz_class scale = values[j] * inverse(deriv.eval(mpz_class(j)), mp) % p;
    det = det + basis * FpPolynomial(p, {scale});
  }
  return det;
}

}  // namespace

mpz_class count_t1(const FpPolynomial& f) {
  if (f.is_zero()) return f.prime();
  const int d = split_part(f).degree();
  return mpz_class(d > 0 ? d : 0);
}

mpz_class count_system_t3(const FpPolynomial& m, const ZptPolynomial& g) {
  const mpz_class p = m.prime();
  if (p < 3) throw Error("the t=3 system count needs an odd prime");
  if (m.is_zero()) throw Error("m must be nonzero");
  if (m.degree() <= 0) return 0;
  const FpPolynomial mm = m.make_monic();
  PrimePowerModulus mp(p, 1);
  ZptPolynomial mz = to_zpt(mm, mp, 1, 0);
  ZptPolynomial g2 = reduce_mod_triangular(g.with_arity(2), {mz});
  const int dy = g2.degree_in(1);
  if (dy <= 0) throw Error("the system polynomial must involve x2");

  auto coeff_fp = [&](const ZptPolynomial& c) {
    return to_fp_univariate(c.with_arity(1), 0);
  };
  auto cs = g2.coeffs_in(1);

  if (dy == 1) {
    // One solution above each root where the slope is a unit; where it
    // vanishes the fibre is empty or all of F_p depending on the constant.
    FpPolynomial c1 = coeff_fp(cs[1]);
    FpPolynomial c0 = coeff_fp(cs[0]);
    FpPolynomial g1 = gcd(mm, c1);
    mpz_class total = mm.degree() - g1.degree();
    if (g1.degree() >= 1) total += p * gcd(g1, divrem(c0, g1).remainder).degree();
    return total;
  }

  FpPolynomial c2 = coeff_fp(cs[2]);
  if (!(c2.degree() == 0 && c2.coeff(0) == 1)) {
    if (c2.degree() == 0) {
      mpz_class scale = inverse(c2.coeff(0), mp);
      g2 = g2 * scale;
      g2 = reduce_mod_triangular(g2, {mz});
      cs = g2.coeffs_in(1);
    } else {
      throw NonMonicLeadingError(
          "system polynomial has a non-invertible leading coefficient in x2");
    }
  }
  FpPolynomial c1 = coeff_fp(cs[1]);
  FpPolynomial c0 = coeff_fp(cs[0]);

  // X = x2-discriminant of g, reduced mod m.
  FpPolynomial x_disc =
      divrem(c1 * c1 - FpPolynomial(p, {4}) * c0, mm).remainder;
  FpPolynomial gshare = gcd(mm, x_disc);
  if (gshare.degree() == mm.degree()) return mm.degree();  // double root each
  if (gshare.degree() >= 1)
    return count_system_t3(gshare, g2) +
           count_system_t3(divexact(mm, gshare), g2);

  // Discriminant invertible along m: the count is exactly E.
  const int n = mm.degree();
  FpPolynomial det = (p <= 4 * n) ? det_g_of_companion(mm, c0, c1)
                                  : det_by_evaluation(mm, g2);
  return count_with_multiplicity(det);
}

mpz_class count_t3(const std::vector<mpz_class>& coeffs, const mpz_class& p) {
  PrimePowerModulus mod3(p, 3);
  PrimePowerModulus mp(p, 1);
  FpPolynomial fbar(p, coeffs);
  if (fbar.is_zero()) throw Error("the t=3 engine requires p not dividing f");
  if (fbar.degree() == 0) return 0;
  ZptPolynomial f = ZptPolynomial::from_univariate(mod3, coeffs);
  ZptPolynomial dig = digit_substitute(f, 1);

  auto fact = multiplicity_type_factor(fbar);
  mpz_class total = 0;
  std::vector<FpPolynomial> work;
  for (const auto& part : fact.split_parts) {
    if (part.factor.degree() <= 0) continue;
    if (part.multiplicity == 1)
      total += part.factor.degree();  // simple roots lift uniquely
    else
      work.push_back(part.factor);
  }

  while (!work.empty()) {
    FpPolynomial m = work.back();
    work.pop_back();
    ZptPolynomial mhat = teich_poly(m, mod3);
    ValuationSplit vs = extract_valuation(dig, {mhat});
    if (vs.s == 0) throw Error("valuation invariant failed in the t=3 engine");
    if (vs.s >= 3) {
      total += pow_ui(p, 2) * m.degree();
      continue;
    }
    ZptPolynomial gbar = vs.g.reduced_mod_p();
    const int dy = gbar.degree_in(1);

    auto split_or_drop = [&](const FpPolynomial& c, bool keep_coprime_part) {
      FpPolynomial shared = gcd(m, c);
      if (shared.degree() >= m.degree())
        throw Error("canonical remainder vanished along the whole of m");
      if (shared.degree() >= 1) {
        work.push_back(shared);
        if (keep_coprime_part) work.push_back(divexact(m, shared));
        return true;
      }
      return false;
    };

    if (vs.s == 1) {
      if (dy > 0) throw Error("unexpected x2 term at valuation 1");
      // Where g is a unit nothing lifts; where it vanishes, retry deeper.
      split_or_drop(to_fp_univariate(gbar.with_arity(1), 0), false);
      continue;
    }

    // s == 2: one more digit, counted in F_p^2 and scaled by p.
    if (dy == 2) {
      auto cs = gbar.coeffs_in(1);
      FpPolynomial c2 = to_fp_univariate(cs[2].with_arity(1), 0);
      if (!(c2.degree() == 0 && c2.coeff(0) == 1)) {
        if (split_or_drop(c2, true)) continue;
        ZptPolynomial invz = to_zpt(fp_invert_mod(c2, m), mp, 2, 0);
        ZptPolynomial mzp = to_zpt(m, mp, 1, 0);
        gbar = reduce_mod_triangular(gbar * invz, {mzp});
      }
      total += p * count_system_t3(m, gbar);
    } else if (dy == 1) {
      auto cs = gbar.coeffs_in(1);
      FpPolynomial c1 = to_fp_univariate(cs[1].with_arity(1), 0);
      if (split_or_drop(c1, true)) continue;
      total += p * m.degree();
    } else {
      split_or_drop(to_fp_univariate(gbar.with_arity(1), 0), false);
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Small-prime digit recursion

namespace {

void small_p_step(const std::vector<mpz_class>& h, unsigned tau,
                  const mpz_class& multiplier, const mpz_class& p,
                  mpz_class& total) {
  FpPolynomial hbar(p, h);
  auto roots = enumerate_linear_roots(hbar);
  if (tau == 1) {
    total += multiplier * static_cast<unsigned long>(roots.size());
    return;
  }
  const mpz_class ptau = pow_ui(p, tau);
  for (const mpz_class& r : roots) {
    // h(r + p*y) = sum_j c_j y^j with c_j = p^j * (Hasse_j h)(r), exact.
    std::vector<mpz_class> c(tau, 0);
    for (unsigned j = 0; j < tau && j < h.size(); ++j) {
      mpz_class e = 0, rpow = 1;
      for (std::size_t i = j; i < h.size(); ++i) {
        mpz_class bin;
        mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(i), j);
        e = (e + bin * h[i] % ptau * rpow) % ptau;
        rpow = rpow * r % ptau;
      }
      c[j] = e * pow_ui(p, j) % ptau;
    }
    unsigned s = tau;
    for (unsigned j = 0; j < tau; ++j) {
      if (c[j] != 0) {
        Valuation v = valuation(c[j], p);
        if (v.v < s) s = static_cast<unsigned>(v.v);
      }
    }
    if (s == 0) throw Error("root valuation invariant failed");
    if (s >= tau) {
      total += multiplier * pow_ui(p, tau - 1);
      continue;
    }
    const mpz_class ps = pow_ui(p, s);
    const mpz_class prest = pow_ui(p, tau - s);
    std::vector<mpz_class> h2;
    h2.reserve(tau);
    for (unsigned j = 0; j < tau; ++j) h2.push_back(c[j] / ps % prest);
    small_p_step(h2, tau - s, multiplier * pow_ui(p, s - 1), p, total);
  }
}

}  // namespace

mpz_class count_small_p(const std::vector<mpz_class>& coeffs,
                        const PrimePowerModulus& mod) {
  const mpz_class& p = mod.prime();
  const unsigned t = mod.exponent();
  std::vector<mpz_class> red;
  red.reserve(coeffs.size());
  for (const auto& c : coeffs) red.push_back(mod.reduce(c));
  while (!red.empty() && red.back() == 0) red.pop_back();
  if (red.empty()) return pow_ui(p, t);
  unsigned v = t;
  for (const auto& c : red)
    if (c != 0) {
      Valuation val = valuation(c, p);
      if (val.v < v) v = static_cast<unsigned>(val.v);
    }
  if (v >= 1) {
    const mpz_class pv = pow_ui(p, v);
    std::vector<mpz_class> h;
    h.reserve(red.size());
    for (const auto& c : red) h.push_back(c / pv);
    return pv * count_small_p(h, mod.with_exponent(t - v));
  }
  mpz_class total = 0;
  small_p_step(red, t, 1, p, total);
  return total;
}

// ---------------------------------------------------------------------------
// Ideal-tree engine

namespace {

struct TreeCtx {
  ZptPolynomial f;
  PrimePowerModulus mod;
  mpz_class p;
  unsigned t = 1;
  std::vector<std::optional<ZptPolynomial>> digits;
  std::mutex mu;
  std::atomic<unsigned long> nodes{0};
  std::atomic<unsigned> max_level{0};

  TreeCtx(ZptPolynomial poly, const PrimePowerModulus& m)
      : f(std::move(poly)),
        mod(m),
        p(m.prime()),
        t(m.exponent()),
        digits(m.exponent()) {}
};

const ZptPolynomial& digit_poly(TreeCtx& ctx, unsigned k) {
  std::lock_guard<std::mutex> lock(ctx.mu);
  if (!ctx.digits[k]) ctx.digits[k] = digit_substitute(ctx.f, k);
  return *ctx.digits[k];
}

void touch_level(TreeCtx& ctx, unsigned k) {
  unsigned cur = ctx.max_level.load();
  while (k > cur && !ctx.max_level.compare_exchange_weak(cur, k)) {
  }
}

struct NodeOutcome {
  mpz_class total;
  std::vector<NodeRecord> recs;  // preorder, this node first
};

struct ChildTask {
  TriangularIdeal ideal_p;  // mod p
  unsigned level;
  unsigned mult;
  bool empty_leaf;  // known rootless: record a terminal-empty child
};

NodeOutcome process_node(TreeCtx& ctx, const TriangularIdeal& I,
                         unsigned level, const std::string& path,
                         unsigned mult) {
  ctx.nodes.fetch_add(1);
  touch_level(ctx, level);
  const unsigned t = ctx.t;
  const mpz_class& p = ctx.p;

  NodeRecord rec;
  rec.path = path;
  rec.level = level;
  rec.gen_degrees = I.degrees();
  rec.multiplicity = mult;

  const mpz_class points = I.point_count();

  if (level >= t) {
    // The prefix digits already exhaust the modulus; every point of the
    // ideal is a root.
    rec.s_value = t;
    rec.status = "terminal-saturated";
    rec.contribution = points;
    return {rec.contribution, {rec}};
  }

  ValuationSplit vs = extract_valuation(digit_poly(ctx, level), I.gens);
  if (vs.s < level)
    throw Error("valuation fell below the level on the ideal tree");
  rec.s_value = vs.s;
  const unsigned s = vs.s;

  if (s >= t) {
    rec.status = "terminal-saturated";
    rec.contribution = points * pow_ui(p, t - level);
    return {rec.contribution, {rec}};
  }

  const TriangularIdeal Ibar = I.mod_p();
  ZptPolynomial gbar = vs.g.reduced_mod_p();
  const int dg = gbar.degree_in(level);

  std::vector<ChildTask> tasks;

  if (dg <= 0) {
    if (gbar.is_constant()) {
      // Unit constant: the congruence is p^s * unit = 0 mod p^t with s < t.
      rec.status = "terminal-empty";
      rec.contribution = 0;
      return {0, {rec}};
    }
    // No next digit appears: roots can only sit where g vanishes mod p,
    // and there the valuation strictly grows. Retry those parts in place.
    for (auto& part : sift_vanishing(gbar.with_arity(level), Ibar))
      tasks.push_back({part.component, level, mult, !part.vanishes});
  } else {
    auto cs = gbar.coeffs_in(level);
    ZptPolynomial lead = cs[dg].with_arity(level);
    bool monic = lead.is_constant() && lead.constant_value() == 1;
    if (!monic) {
      QuasiInverse qi = invert_or_split(lead, Ibar);
      if (qi.kind == QuasiInverse::Kind::ZeroElement)
        throw Error("leading coefficient of a canonical remainder vanished");
      if (qi.kind == QuasiInverse::Kind::SplitFound) {
        for (auto& part : qi.parts)
          tasks.push_back({part, level, mult, false});
      } else {
        gbar = Ibar.reduce(gbar * qi.inverse.with_arity(gbar.arity()));
        if (gbar.degree_in(level) != dg)
          throw Error("monic normalization changed the top degree");
        monic = true;
      }
    }
    if (monic) {
      // Terminal when one more digit decides everything: last digit level,
      // linear next digit, or separable next digit (discriminant a unit).
      bool hensel = (s + 1 == t) || (dg == 1);
      if (!hensel) {
        ZptPolynomial disc =
            Ibar.reduce(discriminant_last_var(gbar, Ibar.gens));
        if (!disc.is_zero()) {
          QuasiInverse qi = invert_or_split(disc, Ibar);
          hensel = (qi.kind == QuasiInverse::Kind::Inverted);
        }
      }
      if (hensel) {
        SplittingCertificate cert = rational_radical_extend(Ibar, gbar);
        mpz_class rational = 0;
        for (const auto& comp : cert.components)
          rational += comp.point_count();
        if (rational == 0) {
          rec.status = "terminal-empty";
          rec.contribution = 0;
        } else {
          rec.status = "terminal-hensel";
          rec.contribution = pow_ui(p, s - level) * rational;
        }
        return {rec.contribution, {rec}};
      }
      SplittingCertificate cert = decompose_with_multiplicity(Ibar, gbar);
      if (cert.components.empty()) {
        rec.status = "terminal-empty";
        rec.contribution = 0;
        return {0, {rec}};
      }
      std::vector<std::size_t> order(cert.components.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cert.multiplicities[a] != cert.multiplicities[b])
          return cert.multiplicities[a] > cert.multiplicities[b];
        return compare_ideals(cert.components[a], cert.components[b]) < 0;
      });
      for (std::size_t idx : order)
        tasks.push_back({cert.components[idx], level + 1,
                         cert.multiplicities[idx], false});
    }
  }

  rec.status = "expanded";
  std::vector<NodeRecord> recs{rec};
  mpz_class total = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const ChildTask& task = tasks[i];
    const std::string cpath = path + "." + std::to_string(i);
    if (task.empty_leaf) {
      ctx.nodes.fetch_add(1);
      NodeRecord leaf;
      leaf.path = cpath;
      leaf.level = task.level;
      leaf.s_value = s;
      leaf.gen_degrees = task.ideal_p.degrees();
      leaf.status = "terminal-empty";
      leaf.multiplicity = task.mult;
      leaf.contribution = 0;
      recs.push_back(std::move(leaf));
      continue;
    }
    TriangularIdeal lifted = teich_ideal(task.ideal_p, ctx.mod);
    NodeOutcome child = process_node(ctx, lifted, task.level, cpath, task.mult);
    total += child.total;
    recs.insert(recs.end(), std::make_move_iterator(child.recs.begin()),
                std::make_move_iterator(child.recs.end()));
  }
  recs[0].contribution = total;
  return {total, recs};
}

CountResult run_tree(const std::vector<mpz_class>& coeffs,
                     const PrimePowerModulus& mod, const EngineOptions& opts) {
  TreeCtx ctx(ZptPolynomial::from_univariate(mod, coeffs), mod);
  FpPolynomial fbar(mod.prime(), coeffs);

  NodeRecord root;
  root.path = "0";
  root.level = 0;
  root.s_value = 0;
  root.status = "root";
  root.multiplicity = 0;

  ctx.nodes.fetch_add(1);
  std::vector<NodeRecord> recs;
  mpz_class total = 0;

  std::vector<MultiplicityTypePart> parts;
  if (fbar.degree() > 0) {
    auto fact = multiplicity_type_factor(fbar);
    for (auto it = fact.split_parts.rbegin(); it != fact.split_parts.rend();
         ++it)
      if (it->factor.degree() >= 1) parts.push_back(*it);
  }

  if (parts.empty()) {
    // A unit constant mod p, or no rational roots at all mod p.
    root.status = "terminal-empty";
    root.contribution = 0;
    recs.push_back(root);
  } else {
    auto run_part = [&](std::size_t i) {
      ZptPolynomial mhat = teich_poly(parts[i].factor, mod);
      TriangularIdeal child{mod, {mhat}};
      return process_node(ctx, child, 1, "0." + std::to_string(i),
                          parts[i].multiplicity);
    };
    std::vector<NodeOutcome> outcomes(parts.size());
    if (opts.threads > 1 && parts.size() > 1) {
      std::vector<std::future<NodeOutcome>> futs;
      futs.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i)
        futs.push_back(std::async(std::launch::async, run_part, i));
      for (std::size_t i = 0; i < parts.size(); ++i)
        outcomes[i] = futs[i].get();
    } else {
      for (std::size_t i = 0; i < parts.size(); ++i) outcomes[i] = run_part(i);
    }
    for (auto& oc : outcomes) total += oc.total;
    root.contribution = total;
    recs.push_back(root);
    for (auto& oc : outcomes)
      recs.insert(recs.end(), std::make_move_iterator(oc.recs.begin()),
                  std::make_move_iterator(oc.recs.end()));
  }

  CountResult out;
  out.total = total;
  for (const auto& r : recs)
    if (r.status.rfind("terminal-", 0) == 0) out.per_leaf.push_back(r);
  if (opts.collect_tree) out.tree = std::move(recs);
  out.stats.nodes = ctx.nodes.load();
  out.stats.max_level = ctx.max_level.load();
  out.stats.engine = "tree";
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch

NodeRecord aggregate_leaf(const mpz_class& total) {
  NodeRecord rec;
  rec.path = "0";
  rec.level = 0;
  rec.s_value = 0;
  rec.status = "aggregate";
  rec.multiplicity = 0;
  rec.contribution = total;
  return rec;
}

CountResult dispatch_engine(const std::vector<mpz_class>& h,
                            const PrimePowerModulus& mod,
                            const EngineOptions& opts) {
  const mpz_class& p = mod.prime();
  const unsigned t = mod.exponent();
  const int degree = static_cast<int>(h.size()) - 1;

  enum class Pick { T1, T3, SmallP, Tree };
  Pick pick;
  if (opts.force == Engine::Tree) {
    pick = Pick::Tree;
  } else if (opts.force == Engine::SmallP) {
    pick = Pick::SmallP;
  } else if (t == 1) {
    pick = Pick::T1;
  } else {
    int threshold = std::max(degree, std::max(static_cast<int>(t), 13));
    if (cmp(p, threshold) <= 0)
      pick = Pick::SmallP;
    else if (t == 3)
      pick = Pick::T3;
    else
      pick = Pick::Tree;
  }

  CountResult out;
  switch (pick) {
    case Pick::T1:
      out.total = count_t1(FpPolynomial(p, h));
      out.stats.engine = "t1";
      out.per_leaf.push_back(aggregate_leaf(out.total));
      break;
    case Pick::T3:
      out.total = count_t3(h, p);
      out.stats.engine = "t3";
      out.per_leaf.push_back(aggregate_leaf(out.total));
      break;
    case Pick::SmallP:
      out.total = count_small_p(h, mod);
      out.stats.engine = "smallp";
      out.per_leaf.push_back(aggregate_leaf(out.total));
      break;
    case Pick::Tree:
      out = run_tree(h, mod, opts);
      break;
  }
  return out;
}

}  // namespace

CountResult count_roots(const std::vector<mpz_class>& coeffs,
                        const PrimePowerModulus& mod,
                        const EngineOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const mpz_class& p = mod.prime();
  const unsigned t = mod.exponent();

  std::vector<mpz_class> red;
  red.reserve(coeffs.size());
  unsigned changed = 0;
  for (const auto& c : coeffs) {
    mpz_class r = mod.reduce(c);
    if (r != c) ++changed;
    red.push_back(r);
  }
  while (!red.empty() && red.back() == 0) red.pop_back();

  CountResult out;
  if (red.empty()) {
    out.total = pow_ui(p, t);
    out.stats.engine = "zero";
    out.per_leaf.push_back(aggregate_leaf(out.total));
  } else {
    unsigned v = t;
    for (const auto& c : red)
      if (c != 0) {
        Valuation val = valuation(c, p);
        if (val.v < v) v = static_cast<unsigned>(val.v);
      }
    if (v >= 1) {
      // f = p^v h with p not dividing h: each root of h mod p^(t-v) spreads
      // over p^v residues mod p^t.
      const mpz_class pv = pow_ui(p, v);
      std::vector<mpz_class> h;
      h.reserve(red.size());
      for (const auto& c : red) h.push_back(c / pv);
      out = dispatch_engine(h, mod.with_exponent(t - v), opts);
      out.total *= pv;
      for (auto& r : out.per_leaf) r.contribution *= pv;
      for (auto& r : out.tree) r.contribution *= pv;
      out.stats.content_valuation = v;
    } else {
      out = dispatch_engine(red, mod, opts);
    }
  }
  out.stats.normalized_coeffs = changed;
  out.stats.wall_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return out;
}

std::vector<mpz_class> poincare_truncated(const std::vector<mpz_class>& coeffs,
                                          const mpz_class& p, unsigned max_exp,
                                          const EngineOptions& opts) {
  std::vector<mpz_class> out;
  out.reserve(max_exp + 1);
  out.push_back(1);
  for (unsigned t = 1; t <= max_exp; ++t)
    out.push_back(count_roots(coeffs, PrimePowerModulus(p, t), opts).total);
  return out;
}

}  // namespace ptroots
