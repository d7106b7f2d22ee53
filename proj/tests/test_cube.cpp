#include "doctest.h"
#include "nilkit/cube.hpp"
#include "nilkit/error.hpp"

#include <set>

using namespace nilkit;
using K = MorphismCoord::Kind;

TEST_CASE("apply_morphism on 1-configurations") {
  Configuration c(1, {5, 7});
  CHECK(apply_morphism(c, CubeMorphism::identity(1)) == c);
  CHECK(apply_morphism(c, CubeMorphism(1, {{K::Flip, 1}})).values == std::vector<PointId>{7, 5});
  // duplication along w_1: (w1,w2) -> w1, vertex order bit0 = w1
  auto dup = apply_morphism(c, CubeMorphism(2, {{K::Proj, 1}}));
  CHECK(dup.values == std::vector<PointId>{5, 7, 5, 7});
  CHECK_THROWS_AS(apply_morphism(c, CubeMorphism::identity(2)), InputError);
}

TEST_CASE("enumerate_morphisms counts") {
  CHECK(enumerate_morphisms(1, 1).size() == 4);
  CHECK(enumerate_morphisms(2, 1).size() == 6);
  CHECK(enumerate_morphisms(1, 2).size() == 16);
  CHECK(enumerate_morphisms(0, 3).size() == 8);
  CHECK(enumerate_morphisms(3, 0).size() == 1);
  {
    ScopedGuard g(10);
    CHECK_THROWS_AS(enumerate_morphisms(1, 2), GuardError);
  }
  auto ms = enumerate_morphisms(2, 2);
  std::set<std::vector<VertexIndex>> tables;
  for (const auto& m : ms) tables.insert(m.vertex_table());
  // distinct symbolic morphisms give distinct vertex maps
  CHECK(tables.size() == ms.size());
}

TEST_CASE("composition matches pointwise application") {
  Configuration c(2, {1, 2, 3, 4});
  for (const auto& phi : enumerate_morphisms(1, 2))
    for (const auto& psi : enumerate_morphisms(2, 1)) {
      auto lhs = apply_morphism(apply_morphism(c, phi), psi);
      auto rhs = apply_morphism(c, phi.compose(psi));
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("alternating signs sum to zero") {
  for (int l = 1; l <= 6; ++l) {
    int sum = 0;
    for (VertexIndex w = 0; w < vertex_count(l); ++w) sum += vertex_sign(w);
    CHECK(sum == 0);
  }
}

TEST_CASE("concatenate, slice and patterns") {
  auto sq1 = constant_pattern(1, 3);
  CHECK(concatenate(sq1, sq1, 2) == constant_pattern(2, 3));
  Configuration xx(1, {0, 0}), xy(1, {0, 1});
  CHECK(concatenate(xx, xy, 2) == corner_pattern(2, 0, 1));
  CHECK(corner_pattern(2, 4, 4) == constant_pattern(2, 4));
  CHECK(corner_pattern(1, 2, 9).values == std::vector<PointId>{2, 9});
  CHECK(constant_pattern(0, 6).values == std::vector<PointId>{6});

  Configuration a(2, {1, 2, 3, 4}), b(2, {5, 6, 7, 8});
  for (int axis = 1; axis <= 3; ++axis) {
    auto c = concatenate(a, b, axis);
    CHECK(slice(c, axis, 0) == a);
    CHECK(slice(c, axis, 1) == b);
  }
  CHECK_THROWS_AS(concatenate(a, xx, 1), InputError);
}

TEST_CASE("faces") {
  CHECK(enumerate_faces(2, 1).size() == 4);
  CHECK(enumerate_faces(4, 0).size() == 1);
  CHECK(enumerate_faces(3, 3).size() == 8);
  for (int l = 0; l <= 4; ++l)
    for (int d = 0; d <= l; ++d) {
      auto fs = enumerate_faces(l, d);
      std::set<std::vector<VertexIndex>> seen;
      for (const auto& f : fs) {
        CHECK(f.codim() == d);
        auto m = f.members();
        CHECK(m.size() == (std::size_t{1} << (l - d)));
        seen.insert(m);
      }
      CHECK(seen.size() == fs.size());
    }
}

TEST_CASE("codec is order preserving and round trips") {
  ConfigCodec codec(3, 2);
  CHECK(codec.space_size() == 81);
  CubeCode prev = 0;
  bool first = true;
  for (PointId a = 0; a < 3; ++a)
    for (PointId b = 0; b < 3; ++b)
      for (PointId c = 0; c < 3; ++c)
        for (PointId d = 0; d < 3; ++d) {
          std::vector<PointId> v{a, b, c, d};
          auto code = codec.encode(v);
          if (!first) CHECK(code == prev + 1);
          first = false;
          prev = code;
          CHECK(codec.decode(code).values == v);
          CHECK(codec.digit(code, 3) == d);
        }
  CHECK_THROWS(ConfigCodec(3, 6));
  CHECK(ConfigCodec(2, 6).space_size() == UINT64_MAX);
}
