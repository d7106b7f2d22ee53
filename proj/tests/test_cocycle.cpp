#include <random>

#include "doctest.h"
#include "nilkit/cocycle.hpp"
#include "nilkit/constructions.hpp"
#include "oracles.hpp"

using namespace nilkit;

namespace {

Element el(const FiniteAbelianGroup& a, std::uint32_t k) {
  std::vector<std::uint32_t> t{k};
  return a.from_coordinates(t);
}

SpacePtr hk_z4_deg2(int lmax) {
  auto z4 = cyclic_group(4);
  auto f = validate_filtration(z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
  return share(hk_nilspace(z4, f, trivial_subgroup(z4), lmax));
}

CubespaceMap to_point(SpacePtr x) {
  return CubespaceMap(x, share(point_cubespace(x->lmax())), std::vector<PointId>(x->points(), 0));
}

// every configuration of dimension l over n points whose image under pi is a cube
std::vector<Configuration> over_cubes(const NilspaceTop& t, int l) {
  std::vector<Configuration> out;
  for (const auto& v : oracle::all_configs(t.space->points(), l)) {
    Configuration c(l, v), img = c;
    for (auto& v : img.values) v = t.top.pi[v];
    if (t.top.base->contains(img)) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("derivatives") {
  auto z2 = abelian_product({2});
  auto x = share(oracle::ds_cyclic(2, 1, 3));
  GroupValuedFunction id(x, z2, {el(z2, 0), el(z2, 1)});
  GroupValuedFunction one(x, z2, {el(z2, 1), el(z2, 1)});
  auto d = derivative(one, 2);
  CHECK(std::all_of(d.values.begin(), d.values.end(), [&](Element a) { return a == z2.zero(); }));
  auto d2 = derivative(id, 2);
  CHECK(d2.verified.passed());
  CHECK(std::all_of(d2.values.begin(), d2.values.end(), [&](Element a) { return a == z2.zero(); }));
  auto d1 = derivative(id, 1);
  CHECK(d1(Configuration(1, {0, 1})) == el(z2, 1));
  CHECK(d1(Configuration(1, {0, 0})) == z2.zero());
  CHECK_THROWS_AS(GroupValuedFunction(x, z2, {0}), InputError);

  // d^l is additive
  auto z4 = abelian_product({4});
  auto y = share(oracle::ds_cyclic(4, 1, 3));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Element> f(4), g(4), h(4);
    for (int i = 0; i < 4; ++i) f[i] = rng() % 4, g[i] = rng() % 4, h[i] = z4.add(f[i], g[i]);
    for (int l = 1; l <= 3; ++l) {
      auto df = derivative(GroupValuedFunction(y, z4, f), l);
      auto dg = derivative(GroupValuedFunction(y, z4, g), l);
      auto dh = derivative(GroupValuedFunction(y, z4, h), l);
      for (std::size_t i = 0; i < dh.values.size(); ++i) CHECK(dh.values[i] == z4.add(df.values[i], dg.values[i]));
    }
  }
}

TEST_CASE("cocycle check") {
  auto z2 = abelian_product({2});
  auto x = share(oracle::ds_cyclic(2, 1, 3));
  Cocycle ones(2, x, z2, std::vector<Element>(x->cubes(2).size(), el(z2, 1)));
  auto v = is_cocycle(ones);
  CHECK_FALSE(v.passed);
  CHECK(ones.verified.status == Status::Fail);
  CHECK(v.witness->ints.size() == 1);

  // rho(x, x+a, x+b, x+a+b) = ab is a cocycle but not d^2 f + const
  std::vector<Element> ab;
  for (CubeCode code : x->cubes(2).codes()) {
    auto c = x->cubes(2).codec().decode(code);
    ab.push_back(el(z2, (c[0] != c[1]) && (c[0] != c[2]) ? 1 : 0));
  }
  Cocycle rho(2, x, z2, ab);
  CHECK(is_cocycle(rho).passed);
  auto phi = to_point(x);
  auto sol = solve_functional(phi, rho);
  CHECK_FALSE(sol.feasible);
  REQUIRE(sol.raw.witness);
  CHECK(sol.raw.witness->value != 0);
  CHECK_THROWS_AS(solve_functional(phi, ones), InputError);
}

TEST_CASE("discrepancy") {
  auto x = share(oracle::ds_cyclic(2, 1, 3));
  auto t = nilspace_top(x, 1);
  CHECK(discrepancy(t, Configuration(2, {0, 0, 0, 1})) == t.group.diff(0, 1));
  CHECK(discrepancy(t, Configuration(2, {0, 1, 1, 0})) == t.group.group.zero());
  for (CubeCode code : x->cubes(2).codes())
    CHECK(discrepancy(t, x->cubes(2).codec().decode(code)) == t.group.group.zero());

  auto h = hk_z4_deg2(3);
  auto th = nilspace_top(h, 2);
  CHECK_THROWS_AS(discrepancy(th, Configuration(3, {0, 0, 0, 0, 0, 0, 0, 1})), InputError);
}

TEST_CASE("discrepancy identity D(f.c) = D(c) - d f") {
  for (auto x : {share(oracle::ds_cyclic(2, 1, 3)), share(oracle::ds_cyclic(4, 1, 3)), hk_z4_deg2(3)}) {
    const int s = x->points() == 4 && x->cubes(2).size() != 64 ? 2 : 1;
    auto t = nilspace_top(x, s);
    const auto& a = t.group.group;
    const int l = s + 1;
    const auto fs = oracle::all_configs(a.order(), l);
    std::uint64_t pairs = 0, bad = 0;
    for (const auto& c : over_cubes(t, l)) {
      const Element dc = discrepancy(t, c);
      for (const auto& fc : fs) {
        Element df = a.zero();
        for (VertexIndex w = 0; w < fc.size(); ++w)
          df = vertex_sign(w) > 0 ? a.add(df, fc[w]) : a.sub(df, fc[w]);
        bad += discrepancy(t, shift(t, fc, c)) != a.sub(dc, df);
        ++pairs;
      }
    }
    CHECK(pairs > 0);
    CHECK(bad == 0);
  }
}

TEST_CASE("functional equation") {
  auto x = share(oracle::ds_cyclic(4, 1, 3));
  auto z4 = abelian_product({4});
  auto phi = to_point(x);
  // rho = 0 has f = 0
  auto zero = zero_cocycle(x, z4, 2);
  auto sol = solve_functional(phi, zero);
  REQUIRE(sol.feasible);
  CHECK(sol.round_trip);
  auto all = functional_solutions(sol);
  CHECK(std::find(all.begin(), all.end(), std::vector<Element>(4, z4.zero())) != all.end());

  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Element> g(4);
    for (auto& v : g) v = rng() % 4;
    for (int l = 1; l <= 3; ++l) {
      auto rho = derivative(GroupValuedFunction(x, z4, g), l);
      auto s = solve_functional(phi, rho);
      REQUIRE(s.feasible);
      CHECK(s.round_trip);
      CHECK(s.rho_tilde_cocycle.passed);
      auto df = derivative(s.f, l);
      CHECK(df.values == rho.values);
    }
  }

  // relative case: mod 2 onto D_1(Z/2)
  auto y = share(oracle::ds_cyclic(2, 1, 3));
  CubespaceMap m(x, y, {0, 1, 0, 1});
  std::vector<Element> g{0, 3, 1, 2};
  auto rho = derivative(GroupValuedFunction(x, z4, g), 2);
  auto s = solve_functional(m, rho);
  CHECK(s.feasible);
  CHECK(s.round_trip);
}

TEST_CASE("uniqueness of f up to fibre constants") {
  auto z2 = abelian_product({2});
  auto x = share(oracle::ds_cyclic(2, 1, 3));
  auto phi = to_point(x);
  // l = 1 on an ergodic space: f is unique up to a constant
  auto r1 = zero_cocycle(x, z2, 1);
  auto s1 = functional_solutions(solve_functional(phi, r1));
  for (const auto& f : s1) CHECK(f[0] == f[1]);
  // l = 2: the identity solves d^2 f = 0 and is not constant
  auto r2 = zero_cocycle(x, z2, 2);
  auto s2 = functional_solutions(solve_functional(phi, r2));
  CHECK(s2.size() == 4);
  CHECK(std::any_of(s2.begin(), s2.end(), [](const auto& f) { return f[0] != f[1]; }));
}

TEST_CASE("straight sections and classes") {
  SUBCASE("HK(Z/4) over a point") {
    auto x = hk_z4_deg2(3);
    auto t = nilspace_top(x, 2);
    CubespaceMap psi(t.top.base, share(point_cubespace(t.top.base->lmax())), {0, 0});
    auto s0 = least_section(t);
    CHECK(s0.value == std::vector<PointId>{0, 1});
    auto st = straighten_section(t, psi, s0);
    CHECK(st.rho.verified.passed());
    REQUIRE(st.section);
    CHECK(st.section->straight.passed());
    StraightClass d{0, st.section->value};
    std::sort(d.points.begin(), d.points.end());
    CHECK(check_straight_class(t, psi, d).passed);

    auto rep = straight_classes(t, psi);
    // all four transversals are straight, so they overlap
    CHECK(rep.classes.size() == 4);
    for (const auto& c : rep.classes) CHECK(check_straight_class(t, psi, c).passed);
    CHECK_FALSE(rep.partition.passed);
    CHECK_FALSE(rep.translates.passed);
    CHECK_THROWS_AS(quotient_by_straight_classes(t, psi, rep.classes), InputError);

    auto cls = section_classes(t, psi, *st.section);
    CHECK(cls.size() == 2);
    auto q = quotient_by_straight_classes(t, psi, cls);
    CHECK(q.space->points() == 2);
    CHECK(q.phi.fibration.passed());
    CHECK(q.classification.kind == FibrationKind::Horizontal);
    CHECK(q.classification.consistent);
    CHECK(q.shadow_matches.passed);
    CHECK(q.structure_group.passed);
    auto cert = nilspace_degree(*q.space);
    CHECK(cert.is_nilspace);
    CHECK(*cert.degree == 2);
  }
  SUBCASE("psi = identity") {
    auto x = hk_z4_deg2(3);
    auto t = nilspace_top(x, 2);
    auto psi = identity_map(t.top.base);
    for (PointId a = 0; a < 4; a += 2)
      for (PointId b = 1; b < 4; b += 2) {
        Section s;
        s.value = {a, b};
        CHECK(check_straight(t, psi, s).passed);
      }
    auto rep = straight_classes(t, psi);
    CHECK(rep.classes.size() == 4);
    CHECK(rep.partition.passed);
    CHECK(rep.translates.passed);
    auto q = quotient_by_straight_classes(t, psi, rep.classes);
    CHECK(q.space->points() == 4);
    CHECK(*q.space == *x);
  }
  SUBCASE("D_2(Z/2) over a point") {
    auto x = share(oracle::ds_cyclic(2, 2, 3));
    auto t = nilspace_top(x, 2);
    CHECK(t.base_points() == 1);
    auto psi = identity_map(t.top.base);
    auto st = straighten_section(t, psi, least_section(t));
    REQUIRE(st.section);
    CHECK(st.section->straight.passed());
    auto rep = straight_classes(t, psi);
    CHECK(rep.classes.size() == 2);
    CHECK(rep.partition.passed);
  }
  SUBCASE("partial domains") {
    auto x = hk_z4_deg2(3);
    auto t = nilspace_top(x, 2);
    auto psi = identity_map(t.top.base);
    Section s;
    s.value = {2, Section::kNone};
    auto st = straighten_section(t, psi, s);
    REQUIRE(st.section);
    CHECK(st.section->straight.passed());
    CHECK_FALSE(st.section->defined(1));
    Section bad;
    bad.value = {1, Section::kNone};
    CHECK_THROWS_AS(straighten_section(t, psi, bad), InputError);
  }
}

TEST_CASE("induced subspaces") {
  auto x = oracle::ds_cyclic(4, 1, 2);
  auto sub = induced_subspace(x, {0, 2});
  CHECK(sub.space.points() == 2);
  CHECK(sub.space == oracle::ds_cyclic(2, 1, 2));
  CHECK(sub.old_of_new == std::vector<PointId>{0, 2});
}
