#include <gtest/gtest.h>

#include "fihom/fihom.hpp"
#include "fihom/harness/demo.hpp"
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

Perm compose(const Perm& a, const Perm& b) {
  std::vector<std::size_t> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a(b(i));
  return Perm(v);
}

harness::GenProfile profile(std::uint32_t p) {
  harness::GenProfile prof;
  prof.p = p;
  prof.nmax = 6;
  prof.cap = 24;
  return prof;
}

FBModule at(const SnRep& r) { return FBModule::concentrated(r); }

// the augmentation M(1) -> M(0)
InducedMorphism augmentation(PrimeField f) {
  FBModule v = at(SnRep::trivial(f, 1)), w = at(SnRep::trivial(f, 0));
  Matrix c1(f, induced_dim(w, 1), 1);
  c1(0, 0) = 1;
  return adjoint_morphism(v, w, {Matrix(f, 1, 0), c1});
}

}  // namespace

TEST(InducedLevel, Dims) {
  PrimeField f(2);
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(induced_dim(at(SnRep::trivial(f, 1)), n), n);
    EXPECT_EQ(induced_dim(FBModule(f), n), 0u);
    EXPECT_EQ(free_module(f, 0).dim(n), 1u);
    EXPECT_EQ(free_module(f, 1).dim(n), n);
  }
  EXPECT_EQ(induced_dim(at(regular_rep(f, 2)), 3), 6u);
  EXPECT_EQ(free_module(f, 2).dim(3), 6u);
  for (std::size_t k = 0; k <= 3; ++k)
    for (std::size_t n = 0; n <= 6; ++n) {
      std::size_t falling = n >= k ? factorial(n) / factorial(n - k) : 0;
      EXPECT_EQ(free_module(f, k).dim(n), falling);
    }
}

TEST(InducedAction, Examples) {
  PrimeField f(3);
  FBModule v = at(SnRep::trivial(f, 1));
  EXPECT_EQ(induced_action(v, 2, Perm(2)).data(), Matrix::identity(f, 2).data());
  EXPECT_EQ(induced_action(v, 2, Perm::adjacent(2, 0)).data(), (Matrix(f, {{0, 1}, {1, 0}}).data()));
}

TEST(InducedAction, Functoriality) {
  harness::Rng rng(21);
  for (auto p : {2u, 101u}) {
    auto prof = profile(p);
    for (int t = 0; t < 10; ++t) {
      FBModule v = harness::rand_fb_module(prof, rng);
      std::size_t n = rng.below(5);
      Perm s = random_perm(n, rng), q = random_perm(n, rng);
      EXPECT_EQ((induced_action(v, n, s) * induced_action(v, n, q)).data(), induced_action(v, n, compose(s, q)).data());
      EXPECT_EQ(induced_level_rep(v, n).act(s).data(), induced_action(v, n, s).data());
      EXPECT_FALSE(induced_level_rep(v, n).coxeter_violation().has_value());
    }
  }
}

TEST(InducedTransition, Examples) {
  PrimeField f(2);
  EXPECT_EQ(induced_transition(FBModule(f), 3).rows(), 0u);
  Matrix t = induced_transition(at(SnRep::trivial(f, 1)), 1);
  EXPECT_EQ(t.data(), Matrix(f, {{1}, {0}}).data());
  harness::Rng rng(22);
  auto prof = profile(5);
  for (int k = 0; k < 8; ++k) {
    FBModule v = harness::rand_fb_module(prof, rng);
    for (std::size_t n = 0; n + 2 <= 5; ++n) {
      Matrix two = induced_transition(v, n + 1) * induced_transition(v, n);
      EXPECT_EQ((induced_action(v, n + 2, Perm::adjacent(n + 2, n)) * two).data(), two.data());
    }
  }
}

TEST(Materialize, PassesChecks) {
  harness::Rng rng(23);
  for (auto p : {2u, 3u, 101u}) {
    auto prof = profile(p);
    for (int t = 0; t < 8; ++t) {
      FBModule v = harness::rand_fb_module(prof, rng);
      FIMatrixModule m = materialize(v, 6);
      EXPECT_FALSE(fi_check(m).has_value());
      for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(m.dim(n), induced_dim(v, n));
    }
  }
  EXPECT_FALSE(fi_check(FIMatrixModule::zero(PrimeField(2), 4)).has_value());
}

TEST(FICheck, CorruptedPhiDetected) {
  FIMatrixModule m = harness::gl_example(4, 2);
  EXPECT_FALSE(fi_check(m).has_value());
  auto phis = m.phis();
  phis[1](1, 0) = 1;  // E_11 also hits E_12: breaks equivariance
  FIMatrixModule bad(m.field(), m.actions(), phis);
  EXPECT_TRUE(fi_check(bad).has_value());
}

TEST(GlExample, Dims) {
  auto m = harness::gl_example(5, 2);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(m.dim(n), n * n);
}

TEST(TransitionMap, Examples) {
  PrimeField f(2);
  auto gl = harness::gl_example(3, 2);
  EXPECT_EQ((transition_map(gl, {0, 1}, {0, 1}).data()), Matrix::identity(f, 4).data());
  // S = {2} in T = {1, 2}: E_11 goes to E_22
  Matrix x = transition_map(gl, {1}, {0, 1});
  ASSERT_EQ(x.rows(), 4u);
  EXPECT_EQ(x.column(0), (Vector{0, 0, 0, 1}));
  FIMatrixModule m1 = materialize(free_module(f, 1).generators(), 3);
  Matrix y = transition_map(m1, {0}, {0, 1, 2});
  EXPECT_EQ(y.column(0), (Vector{1, 0, 0}));
}

TEST(TransitionMap, Functoriality) {
  // M(S -> U) = M(T -> U) M(S -> T) for chains S < T < U of subsets of [n]
  harness::Rng rng(24);
  for (auto p : {2u, 7u}) {
    auto prof = profile(p);
    for (int t = 0; t < 6; ++t) {
      FBModule v = harness::rand_fb_module(prof, rng);
      FBModule w = harness::rand_fb_module(prof, rng);
      FIMatrixModule m = cokernel_module(harness::rand_morphism(v, w, rng), 5);
      ASSERT_FALSE(fi_check(m).has_value());
      for (int r = 0; r < 10; ++r) {
        std::size_t c = rng.below(6);
        auto us = subsets_of_size(5, c);
        Subset u = us[rng.below(us.size())];
        std::size_t b = rng.below(c + 1), a = rng.below(b + 1);
        // T: b elements of U, S: a elements of T
        std::vector<std::size_t> pick(u.begin(), u.end());
        for (std::size_t i = c; i > 1; --i) std::swap(pick[i - 1], pick[rng.below(i)]);
        Subset tt(pick.begin(), pick.begin() + b), ss(pick.begin(), pick.begin() + a);
        std::sort(tt.begin(), tt.end());
        std::sort(ss.begin(), ss.end());
        // index sets relative to the ambient subsets
        auto rel = [](const Subset& small, const Subset& big) {
          Subset out;
          for (auto x : small) out.push_back(std::lower_bound(big.begin(), big.end(), x) - big.begin());
          return out;
        };
        Subset full_b(b), full_c(c);
        std::iota(full_b.begin(), full_b.end(), 0);
        std::iota(full_c.begin(), full_c.end(), 0);
        Matrix st = transition_map(m, rel(ss, tt), full_b);
        Matrix tu = transition_map(m, rel(tt, u), full_c);
        Matrix su = transition_map(m, rel(ss, u), full_c);
        EXPECT_EQ((tu * st).data(), su.data());
      }
    }
  }
}

TEST(Morphism, Examples) {
  PrimeField f(3);
  harness::Rng rng(25);
  auto prof = profile(3);
  FBModule v = harness::rand_fb_module(prof, rng);
  FBModule w = harness::rand_fb_module(prof, rng);
  EXPECT_TRUE(InducedMorphism::zero(v, w).eval(4).is_zero());
  std::vector<Matrix> id;
  for (std::size_t m = 0; m < v.stored(); ++m) {
    Matrix c(f, induced_dim(v, m), v.dim(m));
    InducedLevel lvl(v, m);
    if (const auto* b = lvl.block(m))
      for (std::size_t j = 0; j < v.dim(m); ++j) c(b->offset + j, j) = 1;
    id.push_back(c);
  }
  InducedMorphism ident = adjoint_morphism(v, v, id);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(ident.eval(n).data(), Matrix::identity(f, induced_dim(v, n)).data());
  InducedMorphism aug = augmentation(f);
  for (std::size_t n = 1; n <= 5; ++n) {
    Matrix e = aug.eval(n);
    EXPECT_EQ(e.rows(), 1u);
    EXPECT_EQ(e.cols(), n);
    EXPECT_EQ(rank(e), 1u);
  }
}

TEST(Morphism, NonEquivariantRejected) {
  PrimeField f(2);
  FBModule v = at(regular_rep(f, 2)), w = at(SnRep::trivial(f, 2));
  Matrix c(f, 1, 2);
  c(0, 0) = 1;  // e -> 1, s -> 0 is not equivariant
  EXPECT_THROW((adjoint_morphism(v, w, {Matrix(f, 0, 0), Matrix(f, 0, 0), c})), std::invalid_argument);
}

TEST(Morphism, EvalMatchesOracleAndIsUpperTriangular) {
  harness::Rng rng(26);
  for (auto p : {2u, 5u, 101u}) {
    auto prof = profile(p);
    for (int t = 0; t < 8; ++t) {
      FBModule v = harness::rand_fb_module(prof, rng);
      FBModule w = harness::rand_fb_module(prof, rng);
      InducedMorphism g = harness::rand_morphism(v, w, rng);
      for (std::size_t n = 0; n <= 5; ++n) {
        Matrix e = g.eval(n);
        EXPECT_EQ(oracle::to_mat(e), oracle::eval(g, n));
        // no component from inner degree m to a larger inner degree
        InducedLevel src(v, n), dst(w, n);
        auto sd = src.inner_degrees(), dd = dst.inner_degrees();
        for (std::size_t r = 0; r < e.rows(); ++r)
          for (std::size_t c = 0; c < e.cols(); ++c)
            if (dd[r] > sd[c]) {
              EXPECT_EQ(e(r, c), 0u);
            }
        // morphism of FI-modules: commutes with the action and transitions
        Perm s = random_perm(n, rng);
        EXPECT_EQ((e * induced_action(v, n, s)).data(), (induced_action(w, n, s) * e).data());
        if (n < 5) {
          EXPECT_EQ((g.eval(n + 1) * induced_transition(v, n)).data(), (induced_transition(w, n) * e).data());
        }
      }
    }
  }
}

TEST(Morphism, CompositionIsLevelwiseProduct) {
  harness::Rng rng(27);
  auto prof = profile(3);
  for (int t = 0; t < 6; ++t) {
    FBModule u = harness::rand_fb_module(prof, rng);
    FBModule v = harness::rand_fb_module(prof, rng);
    FBModule w = harness::rand_fb_module(prof, rng);
    auto g = harness::rand_morphism(u, v, rng), h = harness::rand_morphism(v, w, rng);
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(h.compose(g).eval(n).data(), (h.eval(n) * g.eval(n)).data());
  }
}

TEST(HomSpace, Dims) {
  PrimeField f(2);
  harness::Rng rng(28);
  auto prof = profile(2);
  for (std::size_t n = 0; n <= 3; ++n)
    for (int t = 0; t < 3; ++t) {
      FBModule w = harness::rand_fb_module(prof, rng);
      EXPECT_EQ(hom_space_basis(free_module(f, n).generators(), w).size(), induced_dim(w, n));
    }
  FBModule v = harness::rand_fb_module(prof, rng);
  EXPECT_TRUE(hom_space_basis(v, FBModule(f)).empty());
  FBModule v2 = at(SnRep::trivial(f, 2)), w3 = at(SnRep::trivial(f, 3));
  EXPECT_TRUE(hom_space_basis(v2, w3).empty());
}

TEST(KernelModule, Examples) {
  PrimeField f(5);
  InducedMorphism aug = augmentation(f);
  FIMatrixModule k = kernel_module(aug, 6);
  EXPECT_FALSE(fi_check(k).has_value());
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(k.dim(n), n == 0 ? 0 : n - 1);
  FIMatrixModule src = kernel_module(InducedMorphism::zero(aug.source(), aug.target()), 4);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(src.dim(n), n);
  FBModule v = at(SnRep::trivial(f, 1));
  std::vector<Matrix> id{Matrix(f, 0, 0), Matrix(f, {{1}})};
  EXPECT_TRUE(kernel_module(adjoint_morphism(v, v, id), 4).is_zero());
}

TEST(KernelModule, DimsMatchRankOracle) {
  harness::Rng rng(29);
  for (auto p : {2u, 3u}) {
    auto prof = profile(p);
    for (int t = 0; t < 6; ++t) {
      FBModule v = harness::rand_fb_module(prof, rng);
      FBModule w = harness::rand_fb_module(prof, rng);
      auto g = harness::rand_morphism(v, w, rng);
      FIMatrixModule k = kernel_module(g, 5), c = cokernel_module(g, 5);
      EXPECT_FALSE(fi_check(k).has_value());
      EXPECT_FALSE(fi_check(c).has_value());
      for (std::size_t n = 0; n <= 5; ++n) {
        std::size_t r = oracle::rank(oracle::eval(g, n), p);
        EXPECT_EQ(k.dim(n), induced_dim(v, n) - r);
        EXPECT_EQ(c.dim(n), induced_dim(w, n) - r);
      }
    }
  }
}
