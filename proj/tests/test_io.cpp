#include <gtest/gtest.h>

#include "fihom/fihom.hpp"
#include "fihom/harness/demo.hpp"
#include "fihom/harness/random.hpp"
#include "fihom/io/json.hpp"

using namespace fihom;
namespace hn = fihom::harness;
using io::json;

TEST(Json, MatrixRoundTrip) {
  Matrix m(PrimeField(7), {{1, 2, 3}, {4, 5, 6}});
  json j = io::to_json(m);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 3);
  Matrix back = io::matrix_from_json(PrimeField(7), j);
  EXPECT_EQ(back.data(), m.data());
  EXPECT_EQ(io::to_json(back).dump(), j.dump());
}

TEST(Json, RoundTripsAreIdentity) {
  hn::Rng rng(71);
  for (auto p : {2u, 101u}) {
    hn::GenProfile prof;
    prof.p = p;
    prof.nmax = 5;
    prof.cap = 20;
    for (int t = 0; t < 5; ++t) {
      FBModule v = hn::rand_fb_module(prof, rng), w = hn::rand_fb_module(prof, rng);
      json jv = io::to_json(v);
      EXPECT_EQ(io::to_json(io::fb_module_from_json(jv)).dump(), jv.dump());
      EXPECT_TRUE(io::fb_module_from_json(jv) == v);

      auto g = hn::rand_morphism(v, w, rng);
      json jg = io::to_json(g);
      EXPECT_EQ(io::to_json(io::induced_morphism_from_json(jg)).dump(), jg.dump());

      FIMatrixModule m = cokernel_module(g, 5);
      json jm = io::to_json(m);
      EXPECT_EQ(io::to_json(io::fi_module_from_json(jm)).dump(), jm.dump());
      EXPECT_TRUE(io::fi_module_from_json(jm) == m);

      ChainComplexFI c = hn::rand_complex(prof, rng, 2);
      json jc = io::to_json(c);
      EXPECT_EQ(io::to_json(io::chain_complex_from_json(jc)).dump(), jc.dump());
      // text round trip too
      EXPECT_EQ(io::to_json(io::chain_complex_from_json(json::parse(jc.dump()))).dump(), jc.dump());
    }
  }
  json gl = io::to_json(hn::gl_example(4, 2));
  EXPECT_EQ(io::kind_of(gl), "fi_module");
  EXPECT_EQ(io::to_json(io::fi_module_from_json(gl)).dump(), gl.dump());
}

TEST(Json, RejectsMalformed) {
  json gl = io::to_json(hn::gl_example(3, 2));
  json extra = gl;
  extra["bogus"] = 1;
  EXPECT_THROW(io::fi_module_from_json(extra), io::ParseError);
  json missing = gl;
  missing.erase("phi");
  EXPECT_THROW(io::fi_module_from_json(missing), io::ParseError);
  json badp = gl;
  badp["p"] = 9;
  EXPECT_ANY_THROW(io::fi_module_from_json(badp));
  json wrongkind = gl;
  wrongkind["kind"] = "fb_module";
  EXPECT_THROW(io::fi_module_from_json(wrongkind), io::ParseError);
  json shape = io::to_json(Matrix(PrimeField(2), 2, 2));
  shape["data"] = json::array({1, 0, 1});
  EXPECT_THROW(io::matrix_from_json(PrimeField(2), shape), io::ParseError);
  json range = io::to_json(Matrix(PrimeField(2), 1, 1));
  range["data"] = json::array({2});
  EXPECT_THROW(io::matrix_from_json(PrimeField(2), range), io::ParseError);
}

TEST(Json, NonEquivariantMorphismRejected) {
  PrimeField f(2);
  FBModule v = FBModule::concentrated(regular_rep(f, 2)), w = FBModule::concentrated(SnRep::trivial(f, 2));
  json j = io::to_json(InducedMorphism::zero(v, w));
  j["data"][2]["data"] = json::array({1, 0});
  EXPECT_ANY_THROW(io::induced_morphism_from_json(j));
}
