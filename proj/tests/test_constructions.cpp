#include "doctest.h"
#include "nilkit/constructions.hpp"
#include "oracles.hpp"

using namespace nilkit;

namespace {

FiniteCubespace cubes_of_hk(const FiniteGroup& g, const Filtration& f, int lmax) {
  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= lmax; ++l) cubes.push_back(hk_cube_group(g, f, l).elements);
  return FiniteCubespace(g.order(), std::move(cubes));
}

}  // namespace

TEST_CASE("group actions") {
  auto d4 = dihedral_group(4);
  auto act = left_translation(d4);
  CHECK(act.transitive());
  std::vector<Element> reps;
  auto cos = coset_action(d4, Subgroup({0, 2}), &reps);
  CHECK(cos.points() == 4);
  CHECK(cos.transitive());
  CHECK(reps == std::vector<Element>{0, 1, 4, 5});
  auto sub = coset_action(d4, Subgroup({0, 4}));
  CHECK(sub.points() == 4);
  std::vector<PointId> bad(8 * 2, 0);
  CHECK_THROWS_AS(GroupAction(d4, 2, bad), InputError);
  // Z/4 on Z/2 through reduction mod 2
  auto z2 = left_translation(cyclic_group(2));
  auto via = pullback_action(cyclic_group(4), {0, 1, 0, 1}, z2);
  CHECK(via.points() == 2);
  // a non-transitive action
  auto triv = pullback_action(cyclic_group(3), {0, 0, 0}, z2);
  CHECK_FALSE(triv.transitive());
  CHECK(triv.orbits().class_count() == 2);
}

TEST_CASE("HK cube groups against naive closure") {
  auto z4 = cyclic_group(4);
  auto hk = hk_cube_group(z4, abelian_filtration(z4, 1), 2);
  CHECK(hk.order() == 64);
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b)
      for (Element c = 0; c < 4; ++c)
        CHECK(hk.contains(Configuration(2, {a, (a + b) % 4, (a + c) % 4, (a + b + c) % 4})));

  auto d4 = dihedral_group(4);
  auto lcs = lower_central_series(d4);
  for (int l = 0; l <= 2; ++l) {
    auto fast = hk_cube_group(d4, lcs, l);
    std::vector<std::vector<Element>> gens;
    for (const auto& gen : fast.generators) gens.push_back(oracle::face_element(d4, gen.face, gen.g));
    auto slow = oracle::product_closure(d4, l, gens);
    CHECK(fast.order() == slow.size());
    for (const auto& t : slow) CHECK(fast.contains(Configuration(l, t)));
  }
  CHECK(hk_cube_group(d4, lcs, 2).order() == 1024);
  CHECK(hk_cube_group(d4, lcs, 0).order() == 8);
}

TEST_CASE("HK groups are cube invariant") {
  auto d4 = dihedral_group(4);
  auto x = cubes_of_hk(d4, lower_central_series(d4), 3);
  CHECK(check_cube_invariance(x).passed);
  auto z4 = cyclic_group(4);
  auto f = validate_filtration(z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
  CHECK(check_cube_invariance_exhaustive(cubes_of_hk(z4, f, 2)).passed);
}

TEST_CASE("commutators of face elements") {
  auto d4 = dihedral_group(4);
  const int l = 2;
  std::vector<Face> faces;
  for (int d = 0; d <= l; ++d)
    for (auto& f : enumerate_faces(l, d)) faces.push_back(f);
  for (const auto& f1 : faces)
    for (const auto& f2 : faces) {
      // F1 n F2 as a vertex set
      std::vector<VertexIndex> meet;
      for (VertexIndex w = 0; w < vertex_count(l); ++w)
        if (f1.contains(w) && f2.contains(w)) meet.push_back(w);
      if (meet.empty()) continue;
      for (Element a = 0; a < 8; ++a)
        for (Element b = 0; b < 8; ++b) {
          auto x = oracle::face_element(d4, f1, a), y = oracle::face_element(d4, f2, b);
          for (VertexIndex w = 0; w < vertex_count(l); ++w) {
            Element expect = std::find(meet.begin(), meet.end(), w) != meet.end() ? d4.commutator(a, b) : 0;
            REQUIRE(d4.commutator(x[w], y[w]) == expect);
          }
        }
    }
}

TEST_CASE("HK nilspaces") {
  auto z2 = cyclic_group(2);
  auto x = hk_nilspace(z2, abelian_filtration(z2, 1), trivial_subgroup(z2), 3);
  CHECK(x == oracle::ds_cyclic(2, 1, 3));

  auto d4 = dihedral_group(4);
  auto y = hk_nilspace(d4, lower_central_series(d4), trivial_subgroup(d4), 3);
  CHECK(y.points() == 8);
  auto cert = nilspace_degree(y);
  CHECK(cert.is_nilspace);
  CHECK(cert.degree == 2);
  CHECK(cert.ergodic_level >= 1);

  auto z4 = cyclic_group(4);
  auto f = validate_filtration(z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
  auto w = hk_nilspace(z4, f, trivial_subgroup(z4), 4);
  CHECK(w.points() == 4);
  CHECK(nilspace_degree(w).degree == 2);

  // nontrivial Gamma: D4 / <s> is a 4-point space
  auto q = hk_nilspace(d4, lower_central_series(d4), Subgroup({0, 4}), 3);
  CHECK(q.points() == 4);
  auto qc = nilspace_degree(q);
  CHECK(qc.is_nilspace);
  CHECK(*qc.degree <= 2);
  CHECK(gamma_levels(lower_central_series(d4), Subgroup({0, 4})) == std::vector<std::uint32_t>{2, 2, 1, 1});
}

TEST_CASE("standard nilspaces") {
  auto z2 = abelian_product({2});
  CHECK(standard_nilspace(z2, 1, 2).cubes(2).size() == 8);
  CHECK(standard_nilspace(z2, 2, 3).cubes(3).size() == 128);
  CHECK(standard_nilspace(z2, 1, 3).cubes(3).size() == 16);
  for (std::uint32_t m : {2u, 3u, 4u})
    for (int s = 1; s <= 2; ++s) {
      auto fast = standard_nilspace(abelian_product({m}), s, s + 1);
      CHECK(fast == oracle::ds_cyclic(m, s, s + 1));
    }
  // polynomial count |A|^{sum_{d<=s} C(l,d)}
  auto v4 = abelian_product({2, 2});
  auto d = standard_nilspace(v4, 1, 3);
  CHECK(d.cubes(3).size() == 256);  // 4^{1+3}
  // equals the HK group of the degree-s filtration
  for (int s = 1; s <= 2; ++s) {
    auto hk = cubes_of_hk(v4.group(), abelian_filtration(v4.group(), s), 3);
    CHECK(hk == standard_nilspace(v4, s, 3));
  }
}

TEST_CASE("dynamical cubes") {
  auto z2 = left_translation(cyclic_group(2));
  auto x = dynamical_cubespace(z2, 2);
  CHECK(x.cubes(2).size() == 8);
  CHECK(x == oracle::ds_cyclic(2, 1, 2));
  auto z6 = left_translation(cyclic_group(6));
  auto y = dynamical_cubespace(z6, 2);
  CHECK(y.cubes(2).size() == 216);
  for (PointId a = 0; a < 6; ++a)
    for (PointId b = 0; b < 6; ++b)
      for (PointId c = 0; c < 6; ++c)
        CHECK(y.contains(Configuration(2, {a, (a + b) % 6, (a + c) % 6, (a + b + c) % 6})));

  // vertex elements from the (s+1)-th lower central term keep constants cubes
  auto d4 = dihedral_group(4);
  auto dyn = dynamical_cubespace(left_translation(d4), 2);
  auto terms = lower_central_terms(d4);
  for (Element g : terms[1].elements())
    for (PointId p = 0; p < 8; ++p)
      for (VertexIndex v = 0; v < 4; ++v) {
        auto c = constant_pattern(2, p);
        c[v] = d4.mul(g, p);
        CHECK(dyn.contains(c));
      }
}

TEST_CASE("RP relations") {
  auto z6 = left_translation(cyclic_group(6));
  auto r = rp_relation(z6, 1);
  CHECK(r.equivalence.passed);
  CHECK(r.invariance.passed);
  REQUIRE(r.relation);
  CHECK(r.relation->is_diagonal());

  auto z2 = left_translation(cyclic_group(2));
  auto via = pullback_action(cyclic_group(4), {0, 1, 0, 1}, z2);
  auto r2 = rp_relation(via, 1);
  REQUIRE(r2.relation);
  CHECK(r2.relation->is_diagonal());

  // D4 on itself: RP^1 is the coset relation of [G,G]
  auto d4 = dihedral_group(4);
  auto r3 = rp_relation(left_translation(d4), 1);
  REQUIRE(r3.relation);
  CHECK(r3.relation->class_count() == 4);
  CHECK(r3.relation->related(0, 2));
  auto r4 = rp_relation(left_translation(d4), 2);
  REQUIRE(r4.relation);
  CHECK(r4.relation->is_diagonal());
  // RP^{s+1} refines RP^s
  CHECK(r4.relation->refines(*r3.relation));
}
