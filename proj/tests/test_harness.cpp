#include <gtest/gtest.h>

#include "fihom/fihom.hpp"
#include "fihom/harness/demo.hpp"
#include "fihom/harness/random.hpp"
#include "fihom/harness/suites.hpp"
#include "oracles.hpp"

using namespace fihom;
namespace hn = fihom::harness;

TEST(Rng, SeedDerivation) {
  EXPECT_EQ(hn::derive_seed(1, "main/p=2", 0), hn::derive_seed(1, "main/p=2", 0));
  EXPECT_NE(hn::derive_seed(1, "main/p=2", 0), hn::derive_seed(1, "main/p=2", 1));
  EXPECT_NE(hn::derive_seed(1, "main/p=2", 0), hn::derive_seed(1, "main/p=101", 0));
  EXPECT_NE(hn::derive_seed(1, "main/p=2", 0), hn::derive_seed(2, "main/p=2", 0));
  // FNV-1a reference value for the empty string and "a"
  EXPECT_EQ(hn::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(hn::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  // splitmix64 reference: first output of the generator seeded with 0
  EXPECT_EQ(hn::splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Rng, BelowIsInRangeAndReplays) {
  hn::Rng a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    auto x = a.below(7);
    EXPECT_LT(x, 7u);
    EXPECT_EQ(x, b.below(7));
  }
  EXPECT_THROW(a.below(0), std::invalid_argument);
}

TEST(Partitions, Counts) {
  const std::size_t counts[] = {1, 1, 2, 3, 5, 7, 11};
  for (std::size_t m = 0; m <= 6; ++m) EXPECT_EQ(hn::partitions(m).size(), counts[m]);
}

TEST(RandFB, Examples) {
  hn::GenProfile prof;
  prof.cap = 0;
  hn::Rng rng(1);
  for (int t = 0; t < 10; ++t) EXPECT_TRUE(hn::rand_fb_module(prof, rng).is_zero());
  prof.cap = 60;
  prof.pool = {{2}, {1, 1}};
  for (int t = 0; t < 30; ++t) {
    auto v = hn::rand_fb_module(prof, rng);
    EXPECT_LE(v.deg(), 2);
    EXPECT_LE(v.total_dim(), 60u);
    EXPECT_EQ(v.dim(0), 0u);
    EXPECT_EQ(v.dim(1), 0u);
  }
  hn::GenProfile def;
  hn::Rng a(77), b(77);
  for (int t = 0; t < 10; ++t) EXPECT_TRUE(hn::rand_fb_module(def, a) == hn::rand_fb_module(def, b));
}

TEST(RandMorphism, Examples) {
  hn::GenProfile prof;
  prof.p = 3;
  hn::Rng rng(2);
  PrimeField f(3);
  FBModule v2 = FBModule::concentrated(SnRep::trivial(f, 2)), w3 = FBModule::concentrated(SnRep::trivial(f, 3));
  EXPECT_TRUE(hn::rand_morphism(v2, w3, rng).is_zero());
  for (int t = 0; t < 10; ++t) {
    auto v = hn::rand_fb_module(prof, rng), w = hn::rand_fb_module(prof, rng);
    hn::Rng a(t), b(t);
    auto x = hn::rand_morphism(v, w, a), y = hn::rand_morphism(v, w, b);
    EXPECT_EQ(io::to_json(x).dump(), io::to_json(y).dump());
    // passes the validating constructor again
    EXPECT_NO_THROW(InducedMorphism(v, w, x.data()));
  }
}

TEST(Profile, Check) {
  hn::GenProfile p;
  EXPECT_FALSE(p.check().has_value());
  p.p = 9;
  EXPECT_TRUE(p.check().has_value());
  p.p = 2;
  p.nmax = 6;
  EXPECT_TRUE(p.check().has_value());
  p.nmax = 7;
  EXPECT_FALSE(p.check().has_value());
}

TEST(Omega, Table) {
  auto rows = hn::omega_table(1, 0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].omega, 6);
  EXPECT_EQ(rows[1].hyper, 2);
  EXPECT_EQ(rows[1].t0, 5);
  EXPECT_EQ(rows[1].t1, 10);
  EXPECT_EQ(rows[1].omega, 10);
  EXPECT_FALSE(hn::omega_identity_violation(20, 20).has_value());
  for (int k = 0; k <= 20; ++k)
    for (int d = 0; d <= 20; ++d) {
      // chain: 2 t~ + 1 and 2 max(t~_k, t~_{k+1}) + 2 with t~_j = 2j + d
      int tt = 2 * k + d, tt1 = 2 * (k + 1) + d;
      EXPECT_EQ(2 * tt + 1, hn::generation_bound(k, d));
      EXPECT_EQ(2 * std::max(tt, tt1) + 2, hn::bound_omega(k, d));
    }
}

TEST(GlDemo, Values) {
  auto r = hn::demo_congruence(8, 2);
  EXPECT_EQ(r.degrees.t(0), 2);
  EXPECT_LE(r.degrees.t(1), 10);
  EXPECT_LE(r.presentation_degree, 10);
  EXPECT_TRUE(r.within_bounds());
  EXPECT_TRUE(r.colimits_ok());
  ASSERT_EQ(r.identification.size(), 2u);
  for (const auto& c : r.identification) EXPECT_TRUE(c.ok());
}

TEST(GlDemo, CongruenceIdentificationAgreesWithOracle) {
  for (std::size_t n = 1; n <= 2; ++n) {
    EXPECT_TRUE(hn::congruence_identification(n).ok());
    EXPECT_TRUE(oracle::congruence_is_elementary_abelian(n));
    EXPECT_EQ(hn::congruence_identification(n).order, std::size_t{1} << (n * n));
  }
}

namespace {

hn::GenProfile small_profile() {
  hn::GenProfile prof;
  prof.trials = 4;
  prof.nmax = 7;
  prof.cap = 24;
  return prof;
}

}  // namespace

TEST(Suites, SmallRunsPass) {
  hn::SuiteOptions opt;
  for (const auto& name : hn::suite_names()) {
    auto r = hn::run_suite(name, small_profile(), opt);
    EXPECT_TRUE(r.violations.empty()) << name << ": " << hn::to_json(r).dump();
    EXPECT_TRUE(r.controls_ok()) << name;
    EXPECT_FALSE(r.controls.empty()) << name;
    EXPECT_EQ(r.trials, 8u);
  }
}

TEST(Suites, ParallelRunsAreByteIdentical) {
  for (const auto& name : {"main", "colimit"}) {
    hn::SuiteOptions one, many;
    many.jobs = 4;
    auto a = hn::to_json(hn::run_suite(name, small_profile(), one)).dump();
    auto b = hn::to_json(hn::run_suite(name, small_profile(), many)).dump();
    EXPECT_EQ(a, b);
  }
}

TEST(Suites, ReplayMatchesRun) {
  auto prof = small_profile();
  prof.p = 101;
  std::uint64_t seed = hn::derive_seed(prof.seed, hn::stream_name("regularity", 101), 2);
  auto a = hn::replay_trial("regularity", prof, seed);
  auto b = hn::replay_trial("regularity", prof, seed);
  EXPECT_EQ(a.values.dump(), b.values.dump());
  EXPECT_EQ(a.instance.dump(), b.instance.dump());
}

TEST(Suites, TimingOnlyWhenAsked) {
  hn::SuiteOptions opt;
  auto r = hn::run_suite("foundations", small_profile(), opt);
  EXPECT_FALSE(hn::to_json(r).contains("seconds"));
  opt.timing = true;
  EXPECT_TRUE(hn::to_json(hn::run_suite("foundations", small_profile(), opt)).contains("seconds"));
}

TEST(Controls, AllDetected) {
  for (auto p : {2u, 101u}) {
    EXPECT_TRUE(hn::control_corrupted_phi(p).detected);
    EXPECT_TRUE(hn::control_non_equivariant(p).detected);
    EXPECT_TRUE(hn::control_unstable_kernel(p, 7).detected);
    EXPECT_TRUE(hn::control_off_by_one_regularity(p, 7).detected);
    EXPECT_TRUE(hn::control_mismatched_source(p, 7).detected);
    EXPECT_TRUE(hn::control_corrupted_differential(p, 7).detected);
    EXPECT_TRUE(hn::control_non_cycle(p, 7).detected);
    EXPECT_TRUE(hn::control_free_module_colimit(p).detected);
  }
}
