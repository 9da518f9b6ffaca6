#include <gtest/gtest.h>

#include "fihom/fihom.hpp"
#include "fihom/harness/random.hpp"
#include "fihom/harness/suites.hpp"
#include "oracles.hpp"

using namespace fihom;

namespace {

harness::GenProfile profile(std::uint32_t p, std::size_t nmax = 7) {
  harness::GenProfile prof;
  prof.p = p;
  prof.nmax = nmax;
  prof.cap = 20;
  return prof;
}

ChainComplexFI zero_complex(std::vector<FBModule> mods, std::size_t window) {
  std::vector<InducedMorphism> d;
  for (std::size_t k = 1; k < mods.size(); ++k) d.push_back(InducedMorphism::zero(mods[k], mods[k - 1]));
  return ChainComplexFI(std::move(mods), std::move(d), window);
}

ChainComplexFI augmentation_complex(PrimeField f, std::size_t window) {
  FBModule v = FBModule::concentrated(SnRep::trivial(f, 1)), w = FBModule::concentrated(SnRep::trivial(f, 0));
  Matrix c1(f, 1, 1);
  c1(0, 0) = 1;
  return ChainComplexFI({w, v}, {adjoint_morphism(v, w, {Matrix(f, 1, 0), c1})}, window);
}

Vector random_combination(const Subspace& s, harness::Rng& rng) {
  Vector x(s.ambient_dim(), 0);
  const auto& f = s.field();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Scalar a = rng.scalar(f);
    auto b = s.basis_vector(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = f.add(x[j], f.mul(a, b[j]));
  }
  return x;
}

Vector sum_of_images(const Matrix& d, const std::vector<Vector>& ws, std::size_t len) {
  Vector s(len, 0);
  for (const auto& w : ws) {
    Vector dw = d * w;
    for (std::size_t j = 0; j < len; ++j) s[j] = d.field().add(s[j], dw[j]);
  }
  return s;
}

Vector minus(const PrimeField& f, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

}  // namespace

TEST(CheckComplex, Examples) {
  harness::Rng rng(51);
  auto prof = profile(3);
  std::vector<FBModule> mods;
  for (int k = 0; k < 3; ++k) mods.push_back(harness::rand_fb_module(prof, rng));
  EXPECT_FALSE(check_complex(zero_complex(mods, 5)).has_value());
  // L = 1: any morphism
  auto g = harness::rand_morphism(mods[1], mods[0], rng);
  EXPECT_FALSE(check_complex(ChainComplexFI({mods[0], mods[1]}, {g}, 5)).has_value());
  EXPECT_TRUE(check_complex(harness::identity_complex(2, 5, true)).has_value());
  EXPECT_FALSE(check_complex(harness::identity_complex(2, 5, false)).has_value());
}

TEST(CheckComplex, PerturbedDifferentialDetected) {
  harness::Rng rng(52);
  std::size_t detected = 0, tried = 0;
  for (auto p : {2u, 101u}) {
    auto prof = profile(p, 5);
    for (int t = 0; t < 15; ++t) {
      ChainComplexFI c = harness::rand_complex(prof, rng, 2);
      if (c.d(1).is_zero()) continue;
      for (const auto& b : hom_space_basis(c.generators(2), c.generators(1))) {
        if (c.d(1).compose(b).is_zero()) continue;
        ++tried;
        auto bad = c.with_differential(2, c.d(2).linear_combination(1, b, 1));
        detected += check_complex(bad).has_value();
        break;
      }
    }
  }
  EXPECT_GT(tried, 0u);
  EXPECT_EQ(detected, tried);
}

TEST(RandComplex, ValidAcrossSeeds) {
  auto prof = profile(2, 7);
  for (std::uint64_t s = 0; s < 50; ++s) {
    harness::Rng rng(harness::derive_seed(prof.seed, "complex", s));
    ChainComplexFI c = harness::rand_complex(prof, rng, 3);
    EXPECT_FALSE(check_complex(c).has_value());
    for (std::size_t k = 2; k <= 3; ++k)
      for (std::size_t n = 0; n <= 4; ++n) EXPECT_TRUE((c.eval(k - 1, n) * c.eval(k, n)).is_zero());
  }
  harness::Rng rng(1);
  EXPECT_THROW(harness::rand_complex(prof, rng, 0), std::invalid_argument);
}

TEST(RandComplex, Deterministic) {
  auto prof = profile(101, 7);
  harness::Rng a(99), b(99);
  auto x = harness::rand_complex(prof, a, 3), y = harness::rand_complex(prof, b, 3);
  EXPECT_EQ(io::to_json(x).dump(), io::to_json(y).dump());
}

TEST(EvalCache, MatchesOracle) {
  harness::Rng rng(53);
  for (auto p : {2u, 5u}) {
    auto prof = profile(p, 5);
    for (int t = 0; t < 5; ++t) {
      ChainComplexFI c = harness::rand_complex(prof, rng, 3);
      for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(oracle::to_mat(c.eval(k, n)), oracle::eval(c.d(k), n));
    }
  }
}

TEST(VComplex, Examples) {
  PrimeField f(2);
  auto aug = augmentation_complex(f, 5);
  auto h = hyper_degrees(aug);
  EXPECT_EQ(h.t(1), 1);
  EXPECT_EQ(h.t(0), 0);
  EXPECT_TRUE(v_complex(aug).dbar(1, 1).is_zero());

  harness::Rng rng(54);
  auto prof = profile(3);
  std::vector<FBModule> mods;
  for (int k = 0; k < 4; ++k) mods.push_back(harness::rand_fb_module(prof, rng));
  auto hz = hyper_degrees(zero_complex(mods, 5));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(hz.t(k), mods[k].deg());

  auto zero = zero_complex({FBModule(f), FBModule(f)}, 4);
  EXPECT_EQ(hyper_degrees(zero).t(0), -1);
  EXPECT_EQ(hyper_degrees(zero).t(1), -1);

  // identity M(0) -> M(0): exact V-complex
  auto id = harness::identity_complex(2, 4, false);
  EXPECT_EQ(hyper_t(id, 0), -1);
  EXPECT_EQ(hyper_t(id, 1), -1);
}

TEST(VComplex, IsAComplex) {
  harness::Rng rng(55);
  for (auto p : {2u, 101u}) {
    auto prof = profile(p, 5);
    for (int t = 0; t < 8; ++t) EXPECT_FALSE(v_complex(harness::rand_complex(prof, rng, 3)).check().has_value());
  }
}

TEST(Homology, ZeroDifferentials) {
  harness::Rng rng(56);
  auto prof = profile(2, 7);
  std::vector<FBModule> mods;
  for (int k = 0; k < 3; ++k) mods.push_back(harness::rand_fb_module(prof, rng));
  auto c = zero_complex(mods, 7);
  auto h = hyper_degrees(c);
  for (std::size_t k = 0; k < 3; ++k) {
    auto hm = homology_module(c, k);
    for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(hm.dim(n), induced_dim(mods[k], n));
    auto r = verify_main_bounds(c, h, k);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.t0, mods[k].deg());
    EXPECT_EQ(r.t1, -1);
  }
}

TEST(Homology, ExactLevelsVanish) {
  auto id = harness::identity_complex(3, 5, false);
  for (std::size_t k = 0; k <= 1; ++k)
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(homology_module(id, k).dim(n), 0u);
}

TEST(Homology, MatchesFullMatrixOracle) {
  harness::Rng rng(57);
  for (auto p : {5u, 2u}) {
    auto prof = profile(p, 5);
    for (int t = 0; t < 6; ++t) {
      ChainComplexFI c = harness::rand_complex(prof, rng, 2);
      for (std::size_t k = 0; k <= 2; ++k) {
        auto hm = homology(c, k);
        EXPECT_FALSE(fi_check(hm.module).has_value());
        for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(hm.module.dim(n), oracle::homology_dim(c, k, n));
      }
    }
  }
}

TEST(MainBounds, InconclusiveWhenWindowSmall) {
  PrimeField f(2);
  FBModule v = FBModule::concentrated(SnRep::trivial(f, 2));
  auto c = zero_complex({v, v}, 6);
  auto r = verify_main_bounds(c, 0);
  EXPECT_EQ(r.required_window, 7u);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(MainBounds, RandomComplexes) {
  harness::Rng rng(58);
  for (auto p : {2u, 101u}) {
    auto prof = profile(p, 7);
    for (int t = 0; t < 6; ++t) {
      ChainComplexFI c = harness::rand_complex(prof, rng, 3);
      auto h = hyper_degrees(c);
      for (std::size_t k = 0; k <= 2; ++k) {
        auto r = verify_main_bounds(c, h, k);
        EXPECT_NE(r.verdict, Verdict::Fail);
        if (r.verdict == Verdict::Pass) {
          EXPECT_LE(r.t0, 2 * h.t(k) + 1);
          EXPECT_LE(r.t1, 2 * std::max(h.t(k), h.t(k + 1)) + 2);
        }
      }
    }
  }
}

TEST(ReduceCycle, Postconditions) {
  harness::Rng rng(59);
  for (auto p : {2u, 3u, 101u}) {
    auto prof = profile(p, 6);
    for (int t = 0; t < 6; ++t) {
      ChainComplexFI c = harness::rand_complex(prof, rng, 3);
      VComplex v = v_complex(c);
      auto h = hyper_degrees(v);
      for (std::size_t k = 0; k <= 2; ++k) {
        auto hm = homology(c, k);
        for (std::size_t n = 0; n <= 5; ++n) {
          Vector x = random_combination(cycles(c, k, n), rng);
          auto r = reduce_cycle(c, v, h, k, n, x);
          EXPECT_LE(support_degree(c.generators(k), n, r.reduced), std::max(h.t(k), -1));
          if (k > 0) {
            EXPECT_TRUE(is_zero_vector(c.eval(k, n) * r.reduced));
          }
          EXPECT_EQ(hm.class_of(n, x), hm.class_of(n, r.reduced));
          Vector diff = minus(c.field(), x, r.reduced);
          EXPECT_EQ(sum_of_images(c.eval(k + 1, n), r.witnesses, diff.size()), diff);
          EXPECT_EQ(r.iterations, r.witnesses.size());
          EXPECT_TRUE(low_cycles_generate(c, hm, k, n, h.t(k)));
        }
      }
    }
  }
}

TEST(ReduceCycle, Examples) {
  harness::Rng rng(60);
  auto prof = profile(2, 6);
  std::vector<FBModule> mods;
  for (int k = 0; k < 2; ++k) mods.push_back(harness::rand_fb_module(prof, rng));
  auto z = zero_complex(mods, 6);
  auto h = hyper_degrees(z);
  for (std::size_t n = 0; n <= 5; ++n) {
    Vector x = random_combination(cycles(z, 1, n), rng);
    auto r = reduce_cycle(z, 1, n, x);
    EXPECT_EQ(r.reduced, x);
    EXPECT_TRUE(r.witnesses.empty());
  }
  // a boundary whose support reaches the top inner degree reduces to a boundary
  auto aug = augmentation_complex(PrimeField(3), 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    Vector y(n, 0);
    y[n - 1] = 1;
    Vector x = aug.eval(1, n) * y;
    auto hm = homology(aug, 0);
    auto r = reduce_cycle(aug, 0, n, x);
    EXPECT_TRUE(is_zero_vector(hm.class_of(n, x)));
    EXPECT_TRUE(is_zero_vector(hm.class_of(n, r.reduced)));
  }
  EXPECT_THROW((reduce_cycle(aug, 1, 2, Vector{1, 0})), std::logic_error);
  (void)h;
}

TEST(ReduceWitness, Postconditions) {
  harness::Rng rng(61);
  for (auto p : {2u, 101u}) {
    auto prof = profile(p, 6);
    for (int t = 0; t < 8; ++t) {
      ChainComplexFI c = harness::rand_complex(prof, rng, 3);
      VComplex v = v_complex(c);
      auto h = hyper_degrees(v);
      for (std::size_t k = 0; k + 1 <= 2; ++k) {
        int bound = std::max(h.t(k), h.t(k + 1));
        for (std::size_t n = 0; n <= 5; ++n) {
          // y = low part + a cycle of P_{k+1}; x = d(y) is supported low
          std::size_t len = c.dim(k + 1, n);
          InducedLevel lvl(c.generators(k + 1), n);
          auto deg = lvl.inner_degrees();
          Vector y(len, 0);
          for (std::size_t i = 0; i < len; ++i)
            if (static_cast<int>(deg[i]) <= bound) y[i] = rng.scalar(c.field());
          Vector x = c.eval(k + 1, n) * y;
          Vector z = random_combination(cycles(c, k + 1, n), rng);
          for (std::size_t i = 0; i < len; ++i) y[i] = c.field().add(y[i], z[i]);
          auto r = reduce_witness(c, v, h, k, n, x, y);
          EXPECT_EQ(c.eval(k + 1, n) * r.reduced, x);
          EXPECT_LE(support_degree(c.generators(k + 1), n, r.reduced), std::max(bound, -1));
          Vector diff = minus(c.field(), y, r.reduced);
          EXPECT_EQ(sum_of_images(c.eval(k + 2, n), r.witnesses, len), diff);
        }
      }
    }
  }
}

TEST(ReduceWitness, LowInputUnchanged) {
  auto aug = augmentation_complex(PrimeField(2), 5);
  VComplex v = v_complex(aug);
  auto h = hyper_degrees(v);
  // y in P_1 supported in degree 1 <= max(t0, t1) = 1
  Vector y{1, 1, 0};
  Vector x = aug.eval(1, 3) * y;
  auto r = reduce_witness(aug, v, h, 0, 3, x, y);
  EXPECT_EQ(r.reduced, y);
  EXPECT_TRUE(r.witnesses.empty());
}
