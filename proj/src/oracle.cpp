#include "ptroots/oracle.hpp"

namespace ptroots {

mpz_class brute_force_count(const std::vector<mpz_class>& coeffs,
                            const PrimePowerModulus& mod,
                            const OracleBudget& budget) {
  const mpz_class q = mod.modulus();
  if (q > budget.max_points)
    throw BudgetExceededError("modulus " + q.get_str() +
                              " exceeds the oracle point budget");

  std::vector<mpz_class> cs;
  cs.reserve(coeffs.size());
  for (const auto& c : coeffs) cs.push_back(mod.reduce(c));
  while (!cs.empty() && cs.back() == 0) cs.pop_back();

  const unsigned long qq = q.get_ui();
  unsigned long hits = 0;
  if (mpz_sizeinbase(q.get_mpz_t(), 2) <= 31) {
    // All residues and coefficients fit in 31 bits, so acc * x + c stays
    // below 2^63 and plain machine arithmetic is exact.
    std::vector<unsigned long> u(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) u[i] = cs[i].get_ui();
    for (unsigned long x = 0; x < qq; ++x) {
      unsigned long acc = 0;
      for (std::size_t i = u.size(); i-- > 0;) acc = (acc * x + u[i]) % qq;
      if (acc == 0) ++hits;
    }
  } else {
    mpz_class acc;
    for (unsigned long x = 0; x < qq; ++x) {
      acc = 0;
      for (std::size_t i = cs.size(); i-- > 0;) {
        acc *= x;
        acc += cs[i];
        acc %= q;
      }
      if (acc == 0) ++hits;
    }
  }
  return mpz_class(hits);
}

std::vector<std::vector<mpz_class>> enumerate_system(
    const std::vector<ZptPolynomial>& gens, unsigned arity,
    const mpz_class& p, const OracleBudget& budget) {
  mpz_class grid = 1;
  for (unsigned i = 0; i < arity; ++i) {
    grid *= p;
    if (grid > budget.max_points)
      throw BudgetExceededError("grid " + p.get_str() + "^" +
                                std::to_string(arity) +
                                " exceeds the oracle point budget");
  }
  for (const auto& g : gens)
    if (g.arity() > arity)
      throw Error("generator arity exceeds the system arity");

  std::vector<std::vector<mpz_class>> out;
  std::vector<mpz_class> pt(arity, 0);
  while (true) {
    bool ok = true;
    for (const auto& g : gens) {
      if (g.eval(pt) % p != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(pt);
    // Odometer with the last coordinate fastest, so points appear in
    // lexicographic order.
    int i = static_cast<int>(arity) - 1;
    while (i >= 0) {
      pt[i] += 1;
      if (pt[i] == p)
        pt[i--] = 0;
      else
        break;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace ptroots
