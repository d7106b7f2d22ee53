#include "doctest.h"
#include "nilkit/constructions.hpp"
#include "nilkit/fibrations.hpp"
#include "oracles.hpp"

using namespace nilkit;

namespace {

SpacePtr hk_z4_deg2(int lmax) {
  auto z4 = cyclic_group(4);
  auto f = validate_filtration(z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
  return share(hk_nilspace(z4, f, trivial_subgroup(z4), lmax));
}

CubespaceMap mod2(SpacePtr x, SpacePtr y) { return CubespaceMap(x, y, {0, 1, 0, 1}); }

CubespaceMap to_point(SpacePtr x) {
  return CubespaceMap(x, share(point_cubespace(x->lmax())), std::vector<PointId>(x->points(), 0));
}

}  // namespace

TEST_CASE("top structure") {
  auto x = hk_z4_deg2(3);
  auto t = TopStructure::of(x, 2);
  CHECK(t.base->points() == 2);
  CHECK(t.same_fibre(0, 2));
  CHECK_FALSE(t.same_fibre(0, 1));
  // a degree-1 space viewed at degree 2 is its own factor
  auto y = share(oracle::ds_cyclic(2, 1, 3));
  CHECK(TopStructure::of(y, 2).relation.is_diagonal());
  CHECK_THROWS_AS(TopStructure::of(y, 4), InputError);
  CHECK(require_degree(*x) == 2);
}

TEST_CASE("shadows") {
  auto x = hk_z4_deg2(3);
  auto id = identity_map(x);
  auto sh = shadow(id, 2);
  CHECK(sh.psi.map == std::vector<PointId>{0, 1});
  CHECK(sh.psi.fibration.passed());

  // X -> X / {0,2}: the shadow is the identity of pi_1(X)
  auto q = quotient_cubespace(*x, EquivRelation::from_labels({0, 1, 0, 1}));
  CubespaceMap f(x, share(q.space), q.projection);
  auto s2 = shadow(f, 2);
  CHECK(s2.psi.map == std::vector<PointId>{0, 1});
  CHECK(*s2.psi.source == *s2.psi.target);

  // the shadow of pi itself lands on its own target unchanged
  auto sp = shadow(f, 2);
  CHECK(sp.target.relation.is_diagonal());
}

TEST_CASE("classification") {
  SUBCASE("mod 2 on D_2 is vertical") {
    auto x = share(oracle::ds_cyclic(4, 2, 3));
    auto y = share(oracle::ds_cyclic(2, 2, 3));
    auto f = mod2(x, y);
    auto c = classify(f, 2);
    CHECK(c.kind == FibrationKind::Vertical);
    CHECK(c.consistent);
    CHECK(f.vertical.passed());
    CHECK_FALSE(f.horizontal.passed());
  }
  SUBCASE("mod 2 from HK(Z/4) onto D_1(Z/2) is vertical at degree 2") {
    // D_1(Z/2) has 2-uniqueness, so its pi_1 is itself and the shadow is a bijection
    auto x = hk_z4_deg2(3);
    auto y = share(oracle::ds_cyclic(2, 1, 3));
    auto f = mod2(x, y);
    auto c = classify(f, 2);
    CHECK(c.kind == FibrationKind::Vertical);
    CHECK(c.consistent);
    CHECK(c.vertical2.passed);
    CHECK_FALSE(c.horizontal1.passed);
    CHECK(c.horizontal1.witness->ints == std::vector<std::int64_t>{0, 2});
  }
  SUBCASE("collapsing a degree-1 space is horizontal") {
    auto x = share(oracle::ds_cyclic(2, 1, 3));
    auto f = to_point(x);
    auto c = classify(f, 2);
    CHECK(c.kind == FibrationKind::Horizontal);
    CHECK(c.consistent);
  }
  SUBCASE("collapsing HK(Z/4) is neither") {
    auto f = to_point(hk_z4_deg2(3));
    auto c = classify(f, 2);
    CHECK(c.kind == FibrationKind::Neither);
    CHECK(c.consistent);
  }
  SUBCASE("isomorphisms are both") {
    auto f = identity_map(hk_z4_deg2(3));
    CHECK(classify(f, 2).kind == FibrationKind::Both);
  }
  SUBCASE("non-fibrations are rejected") {
    auto x = share(oracle::ds_cyclic(2, 1, 3));
    auto y = share(oracle::ds_cyclic(2, 2, 3));
    CubespaceMap f(x, y, {0, 1});
    CHECK_THROWS_AS(classify(f, 2), InputError);
    CHECK(f.fibration.status == Status::Fail);
  }
}

TEST_CASE("decomposition") {
  auto x = hk_z4_deg2(3);
  auto y = share(oracle::ds_cyclic(2, 1, 3));
  auto f = mod2(x, y);
  auto d = decompose(f, 2);
  CHECK(d.equivalence.passed);
  CHECK(d.middle->points() == 2);
  CHECK(d.relation.related(0, 2));
  CHECK(d.relation.related(1, 3));
  CHECK(d.composes);
  CHECK(d.vertical.fibration.passed());
  CHECK(d.horizontal.fibration.passed());
  CHECK(d.vertical_class.kind == FibrationKind::Vertical);
  CHECK((d.horizontal_class.kind == FibrationKind::Horizontal || d.horizontal_class.kind == FibrationKind::Both));
  CHECK(d.vertical_class.consistent);
  CHECK(d.horizontal_class.consistent);
  // f was vertical already, so f_h is an isomorphism
  CHECK(d.horizontal.injective());
  CHECK(d.horizontal.surjective());

  // a horizontal map: Z is X and f_v an isomorphism
  auto g = to_point(y);
  auto e = decompose(g, 2);
  CHECK(e.middle->points() == 2);
  CHECK(e.vertical.injective());
  CHECK(e.composes);

  // neither: both halves are proper
  auto h = to_point(x);
  auto n = decompose(h, 2);
  CHECK(n.middle->points() == 2);
  CHECK(n.vertical_class.kind == FibrationKind::Vertical);
  CHECK(n.horizontal_class.kind == FibrationKind::Horizontal);
}

TEST_CASE("universal factor") {
  auto x = hk_z4_deg2(3);
  auto y = share(oracle::ds_cyclic(2, 1, 3));
  auto f = mod2(x, y);
  auto d = decompose(f, 2);
  auto p = to_point(x);
  auto g = universal_factor(d.vertical, p);
  CHECK(g.map == std::vector<PointId>{0, 0});
  CHECK(g.fibration.passed());
  auto back = universal_factor(d.vertical, f);
  CHECK(back.map == d.horizontal.map);
  // the fibres of X -> point do not lie in the fibres of mod 2
  CHECK_THROWS_WITH_AS(universal_factor(p, f), doctest::Contains("fibre over 0"), InputError);
}

TEST_CASE("fibration properties") {
  auto x = hk_z4_deg2(3);
  auto y = share(oracle::ds_cyclic(2, 1, 3));
  auto f = mod2(x, y);
  auto g = to_point(y);
  auto gf = compose(g, f);
  CHECK(check_fibration(f, 3).passed);
  CHECK(check_fibration(g, 3).passed);
  CHECK(check_fibration(gf, 3).passed);
  // images of nilspaces under fibrations are nilspaces
  auto img = quotient_cubespace(*x, EquivRelation::from_labels({0, 1, 0, 1}));
  CHECK(nilspace_degree(img.space).is_nilspace);
  CHECK(img.space == *y);
}
