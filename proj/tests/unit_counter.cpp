#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "ptroots/counter.hpp"
#include "ptroots/oracle.hpp"
#include "ptroots/triangular.hpp"

using namespace ptroots;

namespace {

// Parent contribution must equal the sum over direct children everywhere.
void check_tree_sums(const std::vector<NodeRecord>& tree) {
  std::map<std::string, mpz_class> child_sums;
  for (const auto& r : tree) {
    auto dot = r.path.find_last_of('.');
    if (dot != std::string::npos)
      child_sums[r.path.substr(0, dot)] += r.contribution;
  }
  for (const auto& r : tree) {
    auto it = child_sums.find(r.path);
    if (it != child_sums.end()) CHECK(r.contribution == it->second);
  }
}

void check_record_invariants(const CountResult& res, unsigned t) {
  mpz_class leaf_sum = 0;
  for (const auto& r : res.per_leaf) leaf_sum += r.contribution;
  CHECK(leaf_sum == res.total);
  for (const auto& r : res.tree) {
    CHECK(r.gen_degrees.size() == r.level);
    if (r.status != "root" && r.status != "aggregate") {
      CHECK(r.s_value >= r.level);
      CHECK(r.s_value <= t);
    }
    CHECK((r.status == "root" || r.status == "expanded" ||
           r.status == "terminal-saturated" || r.status == "terminal-hensel" ||
           r.status == "terminal-empty" || r.status == "aggregate"));
  }
  if (!res.tree.empty()) check_tree_sums(res.tree);
}

CountResult counted(const std::vector<mpz_class>& cs, long p, unsigned t,
                    Engine force = Engine::Auto) {
  EngineOptions opts;
  opts.force = force;
  opts.collect_tree = true;
  PrimePowerModulus m(p, t);
  CountResult res = count_roots(cs, m, opts);
  check_record_invariants(res, t);
  return res;
}

}  // namespace

TEST_CASE("worked counts") {
  CHECK(counted({0, 0, 1}, 3, 2).total == 3);
  CHECK(counted({5, 0, 1}, 5, 2).total == 0);
  CHECK(counted({1, 0, 1}, 5, 1).total == 2);
  CHECK(counted({0, 0, 0, 1}, 5, 3).total == 25);
  CHECK(counted({0, 5, 1}, 5, 2).total == 5);
  CHECK(counted({-1, 0, 1}, 2, 3).total == 4);
  CHECK(counted({1}, 7, 3).total == 0);
  CHECK(counted({}, 7, 3).total == 343);
  CHECK(counted({0}, 2, 4).total == 16);
}

TEST_CASE("engine dispatch") {
  CHECK(counted({0, 1}, 5, 1).stats.engine == "t1");
  CHECK(counted({0, 0, 1}, 3, 2).stats.engine == "smallp");
  CHECK(counted({0, 0, 1}, 17, 3).stats.engine == "t3");
  CHECK(counted({0, 0, 1}, 17, 2).stats.engine == "tree");
  CHECK(counted({49, 49}, 7, 2).stats.engine == "zero");
  // degree drags small primes into the enumeration engine
  std::vector<mpz_class> deep(20, 1);
  CHECK(counted(deep, 17, 2).stats.engine == "smallp");
  // forcing overrides
  CHECK(counted({0, 0, 1}, 3, 2, Engine::Tree).stats.engine == "tree");
  CHECK(counted({0, 0, 1}, 17, 2, Engine::SmallP).stats.engine == "smallp");
}

TEST_CASE("normalization statistics") {
  CountResult res = counted({-1, 0, 9}, 2, 3);
  CHECK(res.stats.normalized_coeffs == 2);  // -1 -> 7, 9 -> 1
  CHECK(res.stats.content_valuation == 0);

  // content peels off as a p-power factor
  CountResult c = counted({0, 5, 25}, 5, 2);
  CHECK(c.stats.content_valuation == 1);
  CHECK(c.total == 5);  // 5 * N_1(x + 5x^2 mod 5) = 5 * 1
  CHECK(c.stats.engine == "t1");

  CountResult z = counted({25, 50}, 5, 2);
  CHECK(z.stats.engine == "zero");
  CHECK(z.total == 25);
  REQUIRE(z.per_leaf.size() == 1);
  CHECK(z.per_leaf[0].status == "aggregate");
}

TEST_CASE("t1 closed form") {
  CHECK(count_t1(FpPolynomial(5, {1, 0, 1})) == 2);
  CHECK(count_t1(FpPolynomial(5, {2, 0, 1})) == 0);
  CHECK(count_t1(FpPolynomial(5, {0, 0, 1})) == 1);
  CHECK(count_t1(FpPolynomial(5)) == 5);
  CHECK(count_t1(FpPolynomial(5, {3})) == 0);
  CHECK(count_t1(FpPolynomial(7, {0, 6, 0, 1})) == 3);  // x^3 - x
}

TEST_CASE("t3 engine frozen traces") {
  CHECK(count_t3({0, 0, 0, 1}, 5) == 25);
  CHECK(count_t3({25, 0, 1}, 5) == 10);
  CHECK(count_t3({1, 0, 1}, 5) == 2);   // squarefree: same as t=1
  CHECK(count_t3({1}, 5) == 0);
  // against the oracle on random inputs with unit content
  std::mt19937_64 rng(999);
  for (int trial = 0; trial < 120; ++trial) {
    long p = (trial % 2) ? 7 : 11;
    PrimePowerModulus m(p, 3);
    std::uniform_int_distribution<long> dc(0, 343 - 1);
    std::vector<mpz_class> cs;
    int d = 1 + trial % 6;
    for (int i = 0; i <= d; ++i) cs.emplace_back(dc(rng) % m.modulus());
    bool unit = false;
    for (const auto& cc : cs) unit = unit || cc % p != 0;
    if (!unit) cs[0] = 1;
    CHECK(count_t3(cs, p) == brute_force_count(cs, m));
  }
}

TEST_CASE("t3 system solver") {
  PrimePowerModulus m(5, 1);
  ZptPolynomial x1 = ZptPolynomial::variable(m, 2, 0);
  ZptPolynomial x2 = ZptPolynomial::variable(m, 2, 1);

  FpPolynomial ma(5, {4, 0, 1});  // roots 1, 4
  CHECK(count_system_t3(ma, x2 * x2 + x1) == 4);
  FpPolynomial mb(5, {1, 0, 1});  // roots 2, 3
  CHECK(count_system_t3(mb, x2 * x2 + x1) == 0);
  // linear g: one x2 per root of m
  CHECK(count_system_t3(ma, x2 + x1 * x1) == 2);

  CHECK_THROWS_AS(count_system_t3(FpPolynomial(2, {0, 1}),
                                  ZptPolynomial::variable(
                                      PrimePowerModulus(2, 1), 2, 1)),
                  Error);
  CHECK_THROWS_AS(count_system_t3(ma, x1), Error);

  // randomized cross-check against grid enumeration
  std::mt19937_64 rng(2468);
  for (int trial = 0; trial < 60; ++trial) {
    long p = (trial % 2) ? 5 : 11;
    PrimePowerModulus mp(p, 1);
    // m = product over a random nonempty residue subset
    FpPolynomial mm = FpPolynomial::constant(p, 1);
    ZptPolynomial mz(mp, 2);
    bool any = false;
    for (long r = 0; r < p; ++r) {
      if (rng() % 3 == 0) {
        any = true;
        mm = mm * FpPolynomial(p, {-r, 1});
      }
    }
    if (!any) mm = FpPolynomial(p, {0, 1});
    for (int i = 0; i <= mm.degree(); ++i)
      mz.add_term({static_cast<unsigned>(i), 0}, mm.coeff(i));

    ZptPolynomial y2 = ZptPolynomial::variable(mp, 2, 1);
    std::uniform_int_distribution<long> dc(0, p - 1);
    ZptPolynomial g = y2 * y2;
    ZptPolynomial b(mp, 2), c(mp, 2);
    for (unsigned e = 0; e < 2; ++e) {
      b.add_term({e, 0}, dc(rng));
      c.add_term({e, 0}, dc(rng));
    }
    g = g + y2 * b + c;
    mpz_class expect = enumerate_system({mz, g}, 2, p).size();
    CHECK(count_system_t3(mm, g) == expect);
  }
}

TEST_CASE("small prime digit recursion") {
  CHECK(count_small_p({1, 1, 1}, PrimePowerModulus(2, 4)) == 0);
  CHECK(count_small_p({0, 1}, PrimePowerModulus(2, 5)) == 1);
  CHECK(count_small_p({-1, 0, 1}, PrimePowerModulus(2, 3)) == 4);
  CHECK(count_small_p({0, 0, 1}, PrimePowerModulus(13, 8)) ==
        pow_ui(mpz_class(13), 4));
  CHECK(count_small_p({}, PrimePowerModulus(3, 2)) == 9);
  CHECK(count_small_p({0, 3}, PrimePowerModulus(3, 3)) == 3);
}

TEST_CASE("hensel stability for squarefree reductions") {
  std::mt19937_64 rng(555);
  int done = 0;
  while (done < 40) {
    long p = (done % 2) ? 5 : 7;
    std::uniform_int_distribution<long> dc(0, p - 1);
    std::vector<mpz_class> cs;
    int d = 2 + done % 4;
    for (int i = 0; i < d; ++i) cs.emplace_back(dc(rng));
    cs.emplace_back(1);
    FpPolynomial f(p, cs);
    if (!gcd(f, f.derivative()).is_one()) continue;
    ++done;
    mpz_class n1 = counted(cs, p, 1).total;
    for (unsigned t = 2; t <= 5; ++t) {
      CHECK(counted(cs, p, t).total == n1);
    }
  }
}

TEST_CASE("engines agree with each other and the oracle") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 80; ++trial) {
    long p = (trial % 2) ? 5 : 7;
    unsigned t = 2 + trial % 3;
    PrimePowerModulus m(p, t);
    std::uniform_int_distribution<unsigned long> dc;
    std::vector<mpz_class> cs;
    int d = 1 + trial % 6;
    for (int i = 0; i <= d; ++i)
      cs.push_back(mpz_class(dc(rng)) % m.modulus());
    CountResult tree = counted(cs, p, t, Engine::Tree);
    CountResult smallp = counted(cs, p, t, Engine::SmallP);
    CHECK(tree.total == smallp.total);
    CHECK(tree.total == brute_force_count(cs, m));
    CHECK(tree.stats.engine == "tree");
    CHECK(smallp.stats.engine == "smallp");
  }
}

TEST_CASE("tree trace structure") {
  CountResult res = counted({0, 0, 1}, 17, 4);
  REQUIRE(res.stats.engine == "tree");
  REQUIRE_FALSE(res.tree.empty());
  CHECK(res.tree[0].status == "root");
  CHECK(res.tree[0].path == "0");
  CHECK(res.tree[0].contribution == res.total);
  CHECK(res.stats.nodes == res.tree.size());
  CHECK(res.stats.max_level >= 1);
  // per-leaf entries are exactly the terminal tree records
  size_t terminals = 0;
  for (const auto& r : res.tree)
    if (r.status.rfind("terminal-", 0) == 0) ++terminals;
  CHECK(res.per_leaf.size() == terminals);

  // without collect_tree the trace stays empty but leaves remain
  CountResult quiet = count_roots({0, 0, 1}, PrimePowerModulus(17, 4));
  CHECK(quiet.tree.empty());
  CHECK_FALSE(quiet.per_leaf.empty());
  CHECK(quiet.total == res.total);
}

TEST_CASE("multithreaded runs are byte-identical") {
  // two split parts of different multiplicity: x^2 * (x-1)^3
  std::vector<mpz_class> cs{0, 0, -1, 3, -3, 1};
  for (long p : {5, 17}) {
    PrimePowerModulus m(p, 4);
    EngineOptions seq, par;
    seq.force = par.force = Engine::Tree;
    seq.collect_tree = par.collect_tree = true;
    seq.threads = 1;
    par.threads = 4;
    CountResult a = count_roots(cs, m, seq);
    CountResult b = count_roots(cs, m, par);
    CHECK(a.total == b.total);
    REQUIRE(a.tree.size() == b.tree.size());
    for (size_t i = 0; i < a.tree.size(); ++i) {
      CHECK(a.tree[i].path == b.tree[i].path);
      CHECK(a.tree[i].status == b.tree[i].status);
      CHECK(a.tree[i].contribution == b.tree[i].contribution);
      CHECK(a.tree[i].s_value == b.tree[i].s_value);
    }
    if (p == 5) CHECK(a.total == brute_force_count(cs, m));
  }
}

TEST_CASE("poincare series") {
  std::vector<mpz_class> sq{0, 0, 1};
  auto series = poincare_truncated(sq, 3, 4);
  std::vector<mpz_class> expect{1, 1, 3, 3, 9};
  CHECK(series == expect);

  auto s2 = poincare_truncated({-1, 0, 1}, 5, 3);
  CHECK(s2 == std::vector<mpz_class>{1, 2, 2, 2});

  auto s3 = poincare_truncated({1}, 5, 2);
  CHECK(s3 == std::vector<mpz_class>{1, 0, 0});

  auto s4 = poincare_truncated({}, 2, 3);
  CHECK(s4 == std::vector<mpz_class>{1, 2, 4, 8});
}
