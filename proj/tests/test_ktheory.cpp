#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "amalgam/ktheory.hpp"
#include "fixtures.hpp"

using namespace amalgam;

namespace {

// Determinantal divisors: d_1 ... d_k = gcd of all k x k minors.
std::vector<mpz_class> invariant_factors_by_minors(const IntMatrix& m) {
  const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  std::vector<mpz_class> divisors{1};
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        IntMatrix sub;
        for (int r = 0; r < rows; ++r) {
          if (!rsel[r]) continue;
          sub.emplace_back();
          for (int c = 0; c < cols; ++c)
            if (csel[c]) sub.back().push_back(m[r][c]);
        }
        mpz_class d = determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    divisors.push_back(g);
  }
  std::vector<mpz_class> out;
  for (std::size_t k = 1; k < divisors.size(); ++k)
    out.push_back(divisors[k - 1] == 0 ? mpz_class(0) : mpz_class(divisors[k] / divisors[k - 1]));
  return out;
}

std::vector<std::vector<bool>> reach_by_bfs(const AGammaMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::vector<int> queue;
    for (int y = 0; y < n; ++y)
      if (a(s, y) != 0 && !reach[s][y]) {
        reach[s][y] = true;
        queue.push_back(y);
      }
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (int y = 0; y < n; ++y)
        if (a(queue[q], y) != 0 && !reach[s][y]) {
          reach[s][y] = true;
          queue.push_back(y);
        }
  }
  return reach;
}

AGammaMatrix from_entries(std::vector<std::vector<long>> e) {
  AGammaMatrix a;
  a.factors = 1;
  a.characters = static_cast<int>(e.size());
  a.entries = std::move(e);
  return a;
}

AGammaMatrix a_gamma(const SpecPtr& spec) {
  return build_a_gamma(*spec, character_table(spec->subgroup()));
}

}  // namespace

TEST(Smith, IdentityAndDiagonal) {
  auto id = smith_normal_form(identity_matrix(3));
  EXPECT_EQ(id.D, identity_matrix(3));
  auto d = smith_normal_form(to_int_matrix({{2, 0}, {0, 3}}));
  EXPECT_EQ(d.invariant_factors(), (std::vector<mpz_class>{1, 6}));
}

TEST(Smith, RandomMatricesAgainstMinors) {
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> shape(1, 8), entry(-5, 5), sparse(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const int r = shape(rng), c = shape(rng);
    IntMatrix m(r, std::vector<mpz_class>(c));
    for (auto& row : m)
      for (auto& x : row) x = sparse(rng) == 0 ? 0 : entry(rng);
    const auto snf = smith_normal_form(m);
    ASSERT_EQ(snf.U * m * snf.V, snf.D);
    ASSERT_EQ(snf.U * snf.U_inv, identity_matrix(r));
    ASSERT_EQ(snf.V * snf.V_inv, identity_matrix(c));
    ASSERT_EQ(snf.U_inv * snf.D * snf.V_inv, m);
    ASSERT_EQ(abs(determinant(snf.U)), 1);
    ASSERT_EQ(abs(determinant(snf.V)), 1);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j) ASSERT_EQ(snf.D[i][j], 0);
    const auto f = snf.invariant_factors();
    for (std::size_t k = 0; k < f.size(); ++k) {
      ASSERT_GE(f[k], 0);
      if (k + 1 < f.size() && f[k] != 0) ASSERT_TRUE(mpz_divisible_p(f[k + 1].get_mpz_t(), f[k].get_mpz_t()));
      if (k + 1 < f.size() && f[k] == 0) ASSERT_EQ(f[k + 1], 0);
    }
    ASSERT_EQ(f, smith_normal_form(transpose(m)).invariant_factors()) << "trial " << trial;
    if (std::max(r, c) <= 5) ASSERT_EQ(f, invariant_factors_by_minors(m)) << "trial " << trial;
  }
}

TEST(Smith, BareissMatchesCofactorExpansion) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9);
  auto cofactor = [](auto&& self, const IntMatrix& m) -> mpz_class {
    if (m.size() == 1) return m[0][0];
    mpz_class s = 0;
    for (std::size_t c = 0; c < m.size(); ++c) {
      IntMatrix minor;
      for (std::size_t r = 1; r < m.size(); ++r) {
        minor.emplace_back();
        for (std::size_t k = 0; k < m.size(); ++k)
          if (k != c) minor.back().push_back(m[r][k]);
      }
      s += (c % 2 ? -1 : 1) * m[0][c] * self(self, minor);
    }
    return s;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    IntMatrix m(n, std::vector<mpz_class>(n));
    for (auto& row : m)
      for (auto& x : row) x = trial % 3 == 0 && entry(rng) > 0 ? 0 : entry(rng);
    EXPECT_EQ(determinant(m), cofactor(cofactor, m));
  }
}

TEST(AGamma, Sl2zMatchesPrintedMatrix) {
  const auto a = a_gamma(fixtures::sl2z());
  EXPECT_EQ(a.entries, (std::vector<std::vector<long>>{{0, 0, 1, 0}, {0, 0, 0, 1}, {2, 0, 0, 0}, {0, 2, 0, 0}}));
}

TEST(AGamma, S4S4MatchesPrintedMatrix) {
  const auto a = a_gamma(fixtures::s4s4());
  EXPECT_EQ(a.entries, (std::vector<std::vector<long>>{{0, 0, 0, 1, 0, 1},
                                                       {0, 0, 0, 0, 1, 1},
                                                       {0, 0, 0, 1, 1, 2},
                                                       {1, 0, 1, 0, 0, 0},
                                                       {0, 1, 1, 0, 0, 0},
                                                       {1, 1, 2, 0, 0, 0}}));
  EXPECT_FALSE(a.transpose_sensitive());
}

TEST(AGamma, BlockStructure) {
  for (const auto& spec : {fixtures::sl2z(), fixtures::s4s4(), fixtures::z2_cubed()}) {
    const auto a = a_gamma(spec);
    for (int r = 0; r < a.size(); ++r)
      for (int c = 0; c < a.size(); ++c) {
        if (a.factor_of(r) == a.factor_of(c)) EXPECT_EQ(a(r, c), 0);
        EXPECT_GE(a(r, c), 0);
        for (int j = 0; j < a.factors; ++j)
          if (j != a.factor_of(r) && a.factor_of(c) != a.factor_of(r))
            EXPECT_EQ(a(r, c), a(r, a.index(j, a.character_of(c))));
      }
  }
}

TEST(AGamma, RowSumsCountNontrivialCosetsTimesDegree) {
  // Summing <chi_k, chi_l^x> against deg chi_l over l and x recovers the
  // multiplicity of chi_k in the permutation character on G/H minus the
  // trivial coset, i.e. deg(chi_k) * ([G:H] - 1).
  for (const auto& spec : {fixtures::sl2z(), fixtures::s4s4()}) {
    const auto table = character_table(spec->subgroup());
    const auto a = build_a_gamma(*spec, table);
    for (int i = 0; i < a.factors; ++i) {
      const int j = (i + 1) % a.factors;
      for (int k = 0; k < a.characters; ++k) {
        long s = 0;
        for (int l = 0; l < a.characters; ++l) s += a(a.index(i, k), a.index(j, l)) * table.degrees[l];
        EXPECT_EQ(s, table.degrees[k] * spec->factor(i).nontrivial_cosets());
      }
    }
  }
}

TEST(AGamma, IndependentOfRepresentatives) {
  const auto reference = a_gamma(fixtures::s4s4());
  auto h = fixtures::share(symmetric(3));
  auto g = fixtures::share(symmetric(4));
  for (Element x = 0; x < g->order(); ++x) {
    auto emb = fixtures::s3_in_s4(h, g);
    if (emb.contains(x)) continue;
    const std::vector<Element> pref{x};
    std::vector<Factor> f;
    f.push_back(finite_factor("S4", emb, pref));
    f.push_back(finite_factor("S4", fixtures::s3_in_s4(h, g)));
    const AmalgamSpec spec(h, std::move(f));
    EXPECT_EQ(build_a_gamma(spec, character_table(*h)).entries, reference.entries) << g->label(x);
  }
}

TEST(AGamma, RefusesSymbolicFactors) {
  auto spec = fixtures::mixed();
  EXPECT_THROW(build_a_gamma(*spec, character_table(spec->subgroup())), SpecError);
  EXPECT_THROW(simplicity_check(*spec), SpecError);
}

TEST(KGroups, PrintedExamples) {
  const auto sl = k_groups(a_gamma(fixtures::sl2z()));
  EXPECT_EQ(sl.k0_string(), "0");
  EXPECT_EQ(sl.k1_string(), "0");

  const auto s4 = a_gamma(fixtures::s4s4());
  const auto snf = smith_normal_form(one_minus(s4));
  EXPECT_EQ(snf.invariant_factors(), (std::vector<mpz_class>{1, 1, 1, 1, 4, 0}));
  const auto k = k_groups(s4);
  EXPECT_EQ(k.k0_free_rank, 1);
  EXPECT_EQ(k.k0_torsion, (std::vector<mpz_class>{4}));
  EXPECT_EQ(k.k1_free_rank, 1);
  EXPECT_EQ(k.k0_string(), "Z ⊕ Z/4");
  EXPECT_EQ(k.k1_string(), "Z");
}

TEST(KGroups, ZeroMatrixAndTranspose) {
  const auto zero = k_groups(from_entries({{0, 0}, {0, 0}}));
  EXPECT_EQ(zero.k0_string(), "0");
  EXPECT_EQ(zero.k1_string(), "0");
  for (const auto& spec : {fixtures::sl2z(), fixtures::s4s4(), fixtures::z2_cubed()}) {
    const auto m = one_minus(a_gamma(spec));
    EXPECT_EQ(smith_normal_form(m).invariant_factors(), smith_normal_form(transpose(m)).invariant_factors());
  }
}

TEST(KGroups, GroupStrings) {
  EXPECT_EQ(abelian_group_string(0, {}), "0");
  EXPECT_EQ(abelian_group_string(2, {2, 6}), "Z^2 ⊕ Z/2 ⊕ Z/6");
  EXPECT_EQ(abelian_group_string(0, {3}), "Z/3");
}

TEST(Irreducible, Examples) {
  const auto sl = a_gamma(fixtures::sl2z());
  EXPECT_FALSE(irreducible(sl));
  const auto reach = reach_by_bfs(sl);
  EXPECT_TRUE(reach[0][2] && reach[2][0]);
  EXPECT_FALSE(reach[0][1] || reach[0][3]);
  EXPECT_TRUE(irreducible(a_gamma(fixtures::s4s4())));
  EXPECT_FALSE(irreducible(from_entries({{0}})));
  EXPECT_TRUE(irreducible(from_entries({{1}})));
}

TEST(Irreducible, RandomDigraphsAgainstBfs) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> bit(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<std::vector<long>> e(n, std::vector<long>(n));
    for (auto& row : e)
      for (auto& x : row) x = bit(rng) == 0 ? 1 : 0;
    const auto a = from_entries(e);
    const auto reach = reach_by_bfs(a);
    bool all = true;
    for (const auto& row : reach) all = all && std::all_of(row.begin(), row.end(), [](bool b) { return b; });
    EXPECT_EQ(irreducible(a), all);
    const auto poset = ideal_lattice(a);
    EXPECT_EQ(poset.reach, reach);
  }
}

TEST(IdealLattice, Sl2zHasTwoIncomparableClasses) {
  const auto p = ideal_lattice(a_gamma(fixtures::sl2z()));
  ASSERT_EQ(p.classes.size(), 2u);
  EXPECT_EQ(p.classes[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(p.classes[1], (std::vector<int>{1, 3}));
  EXPECT_FALSE(p.comparable(0, 1));
  EXPECT_EQ(p.ideal_count(), 4u);
  EXPECT_EQ(p.hasse.size(), 4u);
  EXPECT_EQ(p.saturation({0}), (std::vector<int>{0, 2}));
}

TEST(IdealLattice, IrreducibleIsSimple) {
  const auto p = ideal_lattice(a_gamma(fixtures::s4s4()));
  EXPECT_EQ(p.classes.size(), 1u);
  EXPECT_EQ(p.ideal_count(), 2u);
  EXPECT_EQ(p.hasse, (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(IdealLattice, ChainOfTwoClasses) {
  // {0,1} reaches {2} but not conversely; vertex 3 is transient.
  const auto p = ideal_lattice(from_entries({{0, 1, 1, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}}));
  ASSERT_EQ(p.classes.size(), 2u);
  EXPECT_TRUE(p.below[0][1]);
  EXPECT_EQ(p.ideal_count(), 3u);
  EXPECT_EQ(p.hereditary[1], (std::vector<int>{1}));
  EXPECT_EQ(p.saturation({0, 1}), (std::vector<int>{0, 1, 2}));
}

TEST(IdealLattice, RandomPosetsAgainstPowerset) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> bit(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    std::vector<std::vector<long>> e(n, std::vector<long>(n));
    for (auto& row : e)
      for (auto& x : row) x = bit(rng) == 0 ? 1 : 0;
    const auto p = ideal_lattice(from_entries(e));
    const int c = static_cast<int>(p.classes.size());
    std::vector<std::vector<int>> expected;
    for (int mask = 0; mask < (1 << c); ++mask) {
      bool ok = true;
      for (int s = 0; s < c; ++s)
        for (int t = 0; t < c; ++t)
          if ((mask >> s & 1) && !(mask >> t & 1) && p.reach[p.classes[s][0]][p.classes[t][0]]) ok = false;
      if (!ok) continue;
      std::vector<int> k;
      for (int s = 0; s < c; ++s)
        if (mask >> s & 1) k.push_back(s);
      expected.push_back(k);
    }
    std::sort(expected.begin(), expected.end(), [](const auto& x, const auto& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    EXPECT_EQ(p.hereditary, expected);
    // Unions and intersections stay hereditary.
    for (const auto& x : p.hereditary)
      for (const auto& y : p.hereditary) {
        std::vector<int> u, i;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(i));
        EXPECT_TRUE(std::binary_search(p.hereditary.begin(), p.hereditary.end(), u, [](const auto& a, const auto& b) {
          return a.size() != b.size() ? a.size() < b.size() : a < b;
        }));
        EXPECT_TRUE(std::find(p.hereditary.begin(), p.hereditary.end(), i) != p.hereditary.end());
      }
  }
}

TEST(IdealLattice, Budget) {
  std::vector<std::vector<long>> e(13, std::vector<long>(13, 0));
  for (int x = 0; x < 13; ++x) e[x][x] = 1;
  EXPECT_THROW(ideal_lattice(from_entries(e), 4096), BudgetExceeded);
  EXPECT_EQ(ideal_lattice(from_entries(e), 8192).ideal_count(), 8192u);
}

TEST(Simplicity, Examples) {
  const auto s4 = simplicity_check(*fixtures::s4s4());
  EXPECT_TRUE(s4.simple);
  EXPECT_EQ(s4.witness, 0);
  for (const auto& core : s4.cores) EXPECT_EQ(core.size(), 1u);

  const auto sl = simplicity_check(*fixtures::sl2z());
  EXPECT_FALSE(sl.simple);
  for (const auto& core : sl.cores) EXPECT_EQ(core.size(), 2u);

  EXPECT_TRUE(simplicity_check(*fixtures::z2_cubed()).simple);
}

TEST(Simplicity, ImpliesIrreducible) {
  for (const auto& spec : {fixtures::sl2z(), fixtures::s4s4(), fixtures::z2_cubed()})
    if (simplicity_check(*spec).simple) EXPECT_TRUE(irreducible(a_gamma(spec)));
}
