#include "ptroots/teichmuller.hpp"

#include <utility>
#include <vector>

namespace ptroots {

mpz_class teich_element(const mpz_class& a, const PrimePowerModulus& m) {
  mpz_class r = m.reduce(a);
  for (unsigned i = 0; i < m.exponent(); ++i) {
    r = pow_mod(r, m.prime(), m);
  }
  return r;
}

namespace {

// Lift one splitting generator g (mod p, arity level+1, monic in x_{level+1})
// over an already-lifted prefix. Returns the characteristic polynomial of
// the p^t-th power of the companion matrix of a lift of g, with entries in
// the prefix quotient.
ZptPolynomial lift_level(const std::vector<ZptPolynomial>& prefix,
                         const ZptPolynomial& g, unsigned level,
                         const PrimePowerModulus& target,
                         const TeichOptions& opts) {
  unsigned arity = level + 1;
  int n = g.degree_in(level);
  if (n < 1) throw Error("lift needs positive degree in the top variable");
  std::vector<ZptPolynomial> cs = g.coeffs_in(level);
  if (!(cs[static_cast<size_t>(n)].is_constant() &&
        cs[static_cast<size_t>(n)].constant_value() == 1)) {
    throw NonMonicLeadingError("lift input is not monic: leading coefficient " +
                               cs[static_cast<size_t>(n)].to_string());
  }
  const mpz_class& p = target.prime();
  mpz_class e = pow_ui(p, target.exponent());
  TriangularQuotientRing ring{target, arity, &prefix};
  size_t dim = static_cast<size_t>(n);
  std::vector<ZptPolynomial> powered(dim * dim, ring.zero());

  if (!opts.entry_lift) {
    // Canonical coefficients: the companion matrix is multiplication by the
    // top variable in the quotient by (prefix, lift of g), so its p^t-th
    // power is multiplication by x^(p^t). One powering, then read columns.
    std::vector<ZptPolynomial> full = prefix;
    full.push_back(g.lifted_to(target));
    ZptPolynomial x = ZptPolynomial::variable(target, arity, level);
    size_t nb = mpz_sizeinbase(e.get_mpz_t(), 2);
    ZptPolynomial z = x;
    for (size_t i = nb - 1; i-- > 0;) {
      z = reduce_mod_triangular(z * z, full);
      if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
        z = reduce_mod_triangular(z * x, full);
      }
    }
    ZptPolynomial col = z;
    for (size_t j = 0; j < dim; ++j) {
      std::vector<ZptPolynomial> cc = col.coeffs_in(level);
      cc.resize(dim, ZptPolynomial(target, arity));
      for (size_t i = 0; i < dim; ++i) powered[i * dim + j] = cc[i];
      if (j + 1 < dim) col = reduce_mod_triangular(col * x, full);
    }
  } else {
    auto lift_value = [&](const mpz_class& c) {
      mpz_class l = target.reduce(opts.entry_lift(c));
      if ((l - c) % p != 0) {
        throw Error("entry lift changes the mod-p residue");
      }
      return l;
    };
    auto lift_poly = [&](const ZptPolynomial& q) {
      ZptPolynomial out(target, arity);
      for (const auto& [m, c] : q.terms()) out.add_term(m, lift_value(c));
      return out;
    };
    std::vector<ZptPolynomial> mat(dim * dim, ring.zero());
    for (size_t i = 0; i < dim; ++i) {
      for (size_t j = 0; j + 1 < dim; ++j) {
        mat[i * dim + j] = ZptPolynomial::constant(
            target, arity, lift_value(i == j + 1 ? 1 : 0));
      }
      mat[i * dim + (dim - 1)] =
          lift_poly(-cs[i].with_arity(arity));
    }
    auto matmul = [&](const std::vector<ZptPolynomial>& a,
                      const std::vector<ZptPolynomial>& b) {
      std::vector<ZptPolynomial> r(dim * dim, ring.zero());
      for (size_t i = 0; i < dim; ++i) {
        for (size_t l = 0; l < dim; ++l) {
          for (size_t j = 0; j < dim; ++j) {
            r[i * dim + j] = ring.add(
                r[i * dim + j], ring.mul(a[i * dim + l], b[l * dim + j]));
          }
        }
      }
      return r;
    };
    size_t nb = mpz_sizeinbase(e.get_mpz_t(), 2);
    powered = mat;
    for (size_t i = nb - 1; i-- > 0;) {
      powered = matmul(powered, powered);
      if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
        powered = matmul(powered, mat);
      }
    }
  }

  std::vector<ZptPolynomial> cpoly = charpoly_berkowitz(powered, dim, ring);
  ZptPolynomial lifted = ZptPolynomial::from_coeffs_in(level, cpoly);
  return reduce_mod_triangular(lifted, prefix);
}

void check_reduction(const ZptPolynomial& lifted, const ZptPolynomial& g,
                     const std::vector<ZptPolynomial>& prefix_p) {
  if (reduce_mod_triangular(lifted.reduced_mod_p(), prefix_p) != g) {
    throw Error("lift fails to reduce back to its input");
  }
}

}  // namespace

ZptPolynomial teich_poly(const FpPolynomial& m,
                         const PrimePowerModulus& target,
                         const TeichOptions& opts) {
  if (m.prime() != target.prime()) throw Error("lift changes the prime");
  PrimePowerModulus mp = target.mod_p();
  ZptPolynomial g = to_zpt(m, mp, 1, 0);
  ZptPolynomial lifted = lift_level({}, g, 0, target, opts);
  check_reduction(lifted, g, {});
  return lifted;
}

TriangularIdeal teich_ideal(const TriangularIdeal& I,
                            const PrimePowerModulus& target,
                            const TeichOptions& opts) {
  if (I.modulus.prime() != target.prime()) throw Error("lift changes the prime");
  TriangularIdeal Ip = I.mod_p();
  TriangularIdeal out{target, {}};
  std::vector<ZptPolynomial> prefix_p;
  for (unsigned i = 0; i < Ip.level(); ++i) {
    ZptPolynomial lifted = lift_level(out.gens, Ip.gens[i], i, target, opts);
    check_reduction(lifted, Ip.gens[i], prefix_p);
    out.gens.push_back(std::move(lifted));
    prefix_p.push_back(Ip.gens[i]);
  }
  return out;
}

}  // namespace ptroots
