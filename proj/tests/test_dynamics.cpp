#include "doctest.h"
#include "nilkit/dynamics.hpp"
#include "nilkit/factors.hpp"
#include "nilkit/fibrations.hpp"
#include "oracles.hpp"

using namespace nilkit;

TEST_CASE("RP quotients") {
  SUBCASE("rotation of Z/6") {
    DynamicalSystem sys(left_translation(cyclic_group(6)), 3);
    CHECK(sys.minimal());
    auto q = rp_quotient(sys, 1);
    CHECK(q.rp.relation->is_diagonal());
    CHECK(q.space->points() == 6);
    CHECK(q.degree.passed);
    CHECK(*q.certificate.degree == 1);
    CHECK(q.ergodic.passed);
    CHECK(q.translations.passed);
    CHECK(*q.space == oracle::ds_cyclic(6, 1, 3));
  }
  SUBCASE("D4 on the cosets of its centre") {
    auto d4 = dihedral_group(4);
    auto act = coset_action(d4, subgroup_closure(d4, std::vector<Element>{2}));
    DynamicalSystem sys(act, 3);
    auto q = rp_quotient(sys, 1);
    CHECK(q.space->points() == 4);
    CHECK(*q.certificate.degree == 1);
    CHECK(q.translations.passed);
    // the action factors through the abelianisation
    for (Element a = 0; a < 8; ++a)
      for (Element b = 0; b < 8; ++b)
        CHECK(q.induced.permutation(d4.mul(a, b)) == q.induced.permutation(d4.mul(b, a)));
  }
  SUBCASE("S3 collapses to its abelianisation") {
    DynamicalSystem sys(left_translation(symmetric_group(3)), 3);
    auto q = rp_quotient(sys, 1);
    CHECK(q.space->points() == 2);
    CHECK(q.degree.passed);
    auto q2 = rp_quotient(sys, 2);
    CHECK(q2.space->points() == 2);
  }
  SUBCASE("non-minimal systems") {
    auto z2 = cyclic_group(2);
    GroupAction two_orbits(z2, 4, {0, 1, 2, 3, 1, 0, 3, 2});
    DynamicalSystem sys(two_orbits, 2);
    CHECK_FALSE(sys.minimal());
    CHECK_THROWS_AS(rp_quotient(sys, 1), InputError);
    auto parts = rp_quotient_components(sys, 1);
    REQUIRE(parts.size() == 2);
    CHECK(parts[1].orbit == std::vector<PointId>{2, 3});
    CHECK(parts[0].quotient.space->points() == 2);
  }
}

TEST_CASE("RP relations are nested and invariant") {
  for (auto g : {cyclic_group(6), dihedral_group(4), symmetric_group(3)}) {
    auto act = left_translation(g);
    DynamicalSystem sys(act, 3);
    auto r1 = rp_relation(act, 1, sys.cubes().get());
    auto r2 = rp_relation(act, 2, sys.cubes().get());
    CHECK(r1.invariance.passed);
    CHECK(r2.invariance.passed);
    for (PointId a = 0; a < g.order(); ++a)
      for (PointId b = 0; b < g.order(); ++b)
        if (r2.pairs.holds(a, b)) CHECK(r1.pairs.holds(a, b));
    // every h is a 1-translation of the dynamical cubes
    for (Element h = 0; h < g.order(); ++h) CHECK(is_translation(*sys.cubes(), act.permutation(h), 1, 3).passed);
  }
  // on HK(D4) the canonical relations agree with RP
  auto d4 = dihedral_group(4);
  DynamicalSystem sys(left_translation(d4), 3);
  for (int s = 1; s <= 2; ++s) {
    auto rp = rp_relation(sys.action(), s, sys.cubes().get());
    CHECK(*rp.relation == canonical_relation(*sys.cubes(), s));
  }
}

TEST_CASE("descent of actions") {
  auto z6 = cyclic_group(6);
  DynamicalSystem sys(left_translation(z6), 3);
  auto q = rp_quotient(sys, 1);
  auto down = descend_action(sys.action(), q.map);
  CHECK(down == q.induced);

  // a vertical quotient by the subgroup {0,3} of the structure group
  auto x = q.space;
  auto k = quotient_cubespace(*x, EquivRelation::from_labels({0, 1, 2, 0, 1, 2}));
  CubespaceMap v(x, share(k.space), k.projection);
  CHECK(check_fibration(v, 3).passed);
  CHECK(classify(v, 1).kind == FibrationKind::Vertical);
  auto on3 = descend_action(q.induced, v);
  CHECK(on3.points() == 3);
  CHECK(on3.permutation(1) == std::vector<PointId>{1, 2, 0});

  // collapsing {0,1} alone is not invariant
  auto bad = quotient_cubespace(*x, EquivRelation::from_labels({0, 0, 1, 2, 3, 4}));
  CubespaceMap b(x, share(bad.space), bad.projection);
  try {
    descend_action(q.induced, b);
    FAIL("expected NoDescent");
  } catch (const DescentError& e) {
    CHECK(e.code() == "dynamics.NoDescent");
    CHECK(e.witness().size() == 2);
  }
}

TEST_CASE("maximality") {
  auto d4 = dihedral_group(4);
  auto act = coset_action(d4, subgroup_closure(d4, std::vector<Element>{2}));
  DynamicalSystem sys(act, 3);
  auto q = rp_quotient(sys, 1);
  auto rq = maximality_check(sys, 1, q.induced, q.map.map);
  CHECK(rq.passed());
  CHECK(rq.equal);

  GroupAction point(d4, 1, std::vector<PointId>(8, 0));
  auto rp = maximality_check(sys, 1, point, std::vector<PointId>(4, 0));
  CHECK(rp.passed());
  CHECK_FALSE(rp.equal);

  // X / RP^0 is a point, and has trivial RP^1
  auto q0 = rp_quotient(sys, 0);
  CHECK(q0.space->points() == 1);
  CHECK(maximality_check(sys, 1, q0.induced, q0.map.map).passed());

  // a candidate with non-trivial RP^1 is flagged
  DynamicalSystem s3(left_translation(symmetric_group(3)), 3);
  auto self = maximality_check(s3, 1, s3.action(), {0, 1, 2, 3, 4, 5});
  CHECK_FALSE(self.candidate.passed);
  CHECK_THROWS_AS(maximality_check(sys, 1, act, {1, 0, 2, 3}), InputError);
}
