#include <gtest/gtest.h>

#include <set>

#include "fihom/fihom.hpp"
#include "fihom/harness/random.hpp"
#include "oracles.hpp"

using namespace fihom;

namespace {

Perm random_perm(std::size_t n, harness::Rng& rng) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return Perm(v);
}

Perm compose(const Perm& a, const Perm& b) {  // a after b
  std::vector<std::size_t> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(b(i));
  return Perm(v);
}

}  // namespace

TEST(Act, Examples) {
  PrimeField f(3);
  SnRep reg = regular_rep(f, 3);
  EXPECT_EQ(reg.act(Perm(3)).data(), Matrix::identity(f, 6).data());
  SnRep r2 = regular_rep(f, 2);
  EXPECT_EQ(r2.act(Perm::adjacent(2, 0)).data(), (Matrix(f, {{0, 1}, {1, 0}}).data()));

  // 2-subsets of [3] as words over blocks {subset, rest}; sigma = (1 2 3)
  SnRep pairs = perm_module(f, 3, {2, 1});
  auto words = ordered_set_partitions(3, {2, 1});
  ASSERT_EQ(words.size(), 3u);
  Perm sigma = Perm::from_one_based({2, 3, 1});
  Matrix a = pairs.act(sigma);
  for (std::size_t c = 0; c < 3; ++c) {
    std::set<std::size_t> s, img;
    for (std::size_t i = 0; i < 3; ++i)
      if (words[c][i] == 0) s.insert(i);
    for (auto x : s) img.insert(sigma(x));
    for (std::size_t r = 0; r < 3; ++r) {
      std::set<std::size_t> t;
      for (std::size_t i = 0; i < 3; ++i)
        if (words[r][i] == 0) t.insert(i);
      EXPECT_EQ(a(r, c), t == img ? 1u : 0u);
    }
  }
}

TEST(Act, AgreesWithSortingOracle) {
  harness::Rng rng(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    SnRep reg = regular_rep(PrimeField(5), n);
    for (int t = 0; t < 10; ++t) {
      Perm s = random_perm(n, rng);
      EXPECT_EQ(oracle::to_mat(reg.act(s)), oracle::act(reg, s.images()));
    }
  }
}

TEST(Act, Homomorphism) {
  harness::Rng rng(4);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& l : harness::partitions(n)) {
      SnRep r = perm_module(PrimeField(7), n, l);
      for (int t = 0; t < 5; ++t) {
        Perm s = random_perm(n, rng), q = random_perm(n, rng);
        EXPECT_EQ((r.act(s) * r.act(q)).data(), r.act(compose(s, q)).data());
      }
    }
}

TEST(PermModule, Examples) {
  PrimeField f(2);
  SnRep triv = perm_module(f, 3, {3});
  EXPECT_EQ(triv.dim(), 1u);
  for (const auto& g : triv.gens()) EXPECT_EQ(g.data(), (std::vector<Scalar>{1}));
  EXPECT_EQ((perm_module(f, 3, {1, 1, 1}).dim()), 6u);
  EXPECT_EQ((perm_module(f, 4, {2, 2}).dim()), 6u);
  EXPECT_THROW((perm_module(f, 4, {2, 1})), std::invalid_argument);
  for (std::size_t n = 0; n <= 5; ++n)
    for (const auto& l : harness::partitions(n)) {
      SnRep r = perm_module(f, n, l);
      EXPECT_EQ(r.dim(), harness::perm_module_dim(l));
      EXPECT_FALSE(r.coxeter_violation().has_value());
    }
}

TEST(PermModule, CoxeterViolationDetected) {
  PrimeField f(3);
  SnRep good = perm_module(f, 3, {2, 1});
  auto gens = good.gens();
  gens[0](0, 0) = f.add(gens[0](0, 0), 1);
  SnRep bad(f, 3, good.dim(), gens);
  EXPECT_TRUE(bad.coxeter_violation().has_value());
}

TEST(EquivariantHom, Examples) {
  EXPECT_EQ(equivariant_hom_basis(SnRep::trivial(PrimeField(2), 3), SnRep::trivial(PrimeField(2), 3)).size(), 1u);
  PrimeField f3(3);
  auto b = equivariant_hom_basis(SnRep::trivial(f3, 2), regular_rep(f3, 2));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0](0, 0), b[0](1, 0));
  EXPECT_NE(b[0](0, 0), 0u);
  for (std::size_t n = 2; n <= 3; ++n)
    for (const auto& l : harness::partitions(n)) {
      SnRep w = perm_module(f3, n, l);
      EXPECT_EQ(equivariant_hom_basis(regular_rep(f3, n), w).size(), w.dim());
    }
}

TEST(EquivariantHom, BasisIsEquivariantAndComplete) {
  // brute force over F_2: every 3x3 equivariant map is in the span
  PrimeField f(2);
  SnRep v = perm_module(f, 3, {2, 1}), w = perm_module(f, 3, {2, 1});
  auto basis = equivariant_hom_basis(v, w);
  std::size_t count = 0;
  for (unsigned code = 0; code < 512; ++code) {
    Matrix x(f, 3, 3);
    for (std::size_t i = 0; i < 9; ++i) x(i / 3, i % 3) = (code >> i) & 1u;
    count += is_equivariant(x, v, w);
  }
  EXPECT_EQ(std::size_t{1} << basis.size(), count);
  for (const auto& x : basis) EXPECT_TRUE(is_equivariant(x, v, w));
}

TEST(SubsetPerm, Examples) {
  auto id = induced_subset_perm(Perm(3), {0, 1});
  EXPECT_EQ(id.image, (Subset{0, 1}));
  EXPECT_TRUE(id.tau.is_identity());
  auto a = induced_subset_perm(Perm::adjacent(3, 0), {0, 1});
  EXPECT_EQ(a.image, (Subset{0, 1}));
  EXPECT_EQ(a.tau.images(), Perm::adjacent(2, 0).images());
  auto b = induced_subset_perm(Perm::adjacent(3, 1), {0, 1});
  EXPECT_EQ(b.image, (Subset{0, 2}));
  EXPECT_TRUE(b.tau.is_identity());
}

TEST(SubsetPerm, Factorization) {
  // sigma(beta_S(i)) = beta_T(tau(i)) for all i
  harness::Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng.below(6), m = rng.below(n + 1);
    auto subs = subsets_of_size(n, m);
    Subset s = subs[rng.below(subs.size())];
    Perm sigma = random_perm(n, rng);
    auto r = induced_subset_perm(sigma, s);
    for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(sigma(s[i]), r.image[r.tau(i)]);
  }
}

TEST(Perm, CoxeterWord) {
  harness::Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 1 + rng.below(6);
    Perm s = random_perm(n, rng);
    Perm acc(n);
    for (auto i : s.coxeter_word()) acc = compose(acc, Perm::adjacent(n, i));
    EXPECT_EQ(acc.images(), s.images());
  }
}
