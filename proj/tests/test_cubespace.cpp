#include "doctest.h"
#include "nilkit/cubespace.hpp"
#include "nilkit/error.hpp"
#include "oracles.hpp"

using namespace nilkit;

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(FiniteCubespace(0, {{}}), InputError);
  CHECK_THROWS_AS(FiniteCubespace(2, {{0}}), InputError);
  CHECK(point_cubespace(3).lmax() == 3);
}

TEST_CASE("invariance checks") {
  auto d1 = oracle::ds_cyclic(2, 1, 3);
  CHECK(check_cube_invariance(d1).passed);
  CHECK(check_cube_invariance(full_cubespace(3, 2)).passed);

  FiniteCubespace only01(2, {{0, 1}, {ConfigCodec(2, 1).encode(std::vector<PointId>{0, 1})}});
  auto v = check_cube_invariance(only01);
  CHECK_FALSE(v.passed);
  CHECK(replay_failure(only01, v));
}

TEST_CASE("generator check agrees with exhaustive sweep") {
  // closures of random-ish seeds are invariant; corrupting them breaks both checks
  std::vector<std::vector<Configuration>> seeds(3);
  seeds[1].push_back(Configuration(1, {0, 1}));
  seeds[2].push_back(Configuration(2, {0, 1, 2, 0}));
  auto x = invariance_closure(3, 2, seeds);
  CHECK(check_cube_invariance(x).passed);
  CHECK(check_cube_invariance_exhaustive(x).passed);
  for (std::size_t drop = 0; drop < x.cubes(2).size(); drop += 7) {
    std::vector<std::vector<CubeCode>> cubes{x.cubes(0).codes(), x.cubes(1).codes(), x.cubes(2).codes()};
    cubes[2].erase(cubes[2].begin() + static_cast<std::ptrdiff_t>(drop));
    FiniteCubespace y(3, cubes);
    CHECK(check_cube_invariance(y).passed == check_cube_invariance_exhaustive(y).passed);
  }
}

TEST_CASE("invariance_closure") {
  std::vector<std::vector<Configuration>> seeds(3);
  seeds[1].push_back(Configuration(1, {0, 1}));
  auto x = invariance_closure(2, 2, seeds);
  CHECK(x.cubes(1).size() == 4);
  CHECK(x.contains(Configuration(2, {0, 1, 0, 1})));
  CHECK(x.contains(Configuration(2, {1, 1, 0, 0})));
  // idempotent
  std::vector<std::vector<Configuration>> again(3);
  for (int l = 0; l <= 2; ++l)
    for (auto c : x.cubes(l).codes()) again[l].push_back(x.cubes(l).codec().decode(c));
  CHECK(invariance_closure(2, 2, again) == x);
  // empty seed: constants only
  auto consts = invariance_closure(3, 3, {});
  for (int l = 0; l <= 3; ++l) CHECK(consts.cubes(l).size() == 3);
  // monotone
  seeds[2].push_back(Configuration(2, {0, 0, 0, 1}));
  auto bigger = invariance_closure(2, 2, seeds);
  for (int l = 0; l <= 2; ++l)
    for (auto c : x.cubes(l).codes()) CHECK(bigger.cubes(l).contains(c));
}

TEST_CASE("ergodicity") {
  auto d2 = oracle::ds_cyclic(2, 2, 3);
  CHECK(check_ergodic(d2, 2).passed);
  CHECK(d2.cubes(2).size() == 16);
  auto d1 = oracle::ds_cyclic(2, 1, 2);
  auto v = check_ergodic(d1, 2);
  CHECK_FALSE(v.passed);
  CHECK(d1.cubes(2).size() == 8);
  CHECK(replay_failure(d1, v));
  CHECK(check_ergodic(point_cubespace(2), 2).passed);
}

TEST_CASE("corner enumeration agrees with brute force") {
  for (auto x : {oracle::ds_cyclic(2, 1, 3), oracle::ds_cyclic(3, 1, 2), oracle::ds_cyclic(2, 2, 3),
                 oracle::ds_cyclic(4, 1, 2)}) {
    for (int l = 0; l <= x.lmax(); ++l) {
      if (x.points() > 2 && l == 3) continue;
      std::vector<std::vector<PointId>> seen;
      auto n = for_each_corner(x, l, [&](std::span<const PointId> v, CubeCode base) {
        Corner c(l, std::vector<PointId>(v.begin(), v.end()));
        CHECK(ConfigCodec(x.points(), l).encode(c.complete_with(0)) == base);
        seen.emplace_back(v.begin(), v.end());
        return true;
      });
      CHECK(n == oracle::count_corners(x, l));
      CHECK(std::is_sorted(seen.begin(), seen.end()));
    }
  }
}

TEST_CASE("corner completion") {
  auto d1 = oracle::ds_cyclic(2, 1, 2);
  CHECK(complete_corner(d1, Corner(2, {0, 0, 0})) == std::vector<Configuration>{Configuration(2, {0, 0, 0, 0})});
  auto d2 = oracle::ds_cyclic(2, 2, 2);
  CHECK(complete_corner(d2, Corner(2, {0, 0, 0})).size() == 2);
  // face w_1 = 0 is (0,1) at l = 1 in a space whose only 1-cubes are constants
  auto consts = invariance_closure(2, 2, {});
  CHECK_THROWS_AS(complete_corner(consts, Corner(2, {0, 0, 1})), InputError);
}

TEST_CASE("fibrancy, uniqueness and glueing on D_s") {
  for (int s = 1; s <= 2; ++s) {
    auto x = oracle::ds_cyclic(2, s, s + 2);
    CHECK(check_fibrant(x, s + 2).passed);
    CHECK(check_uniqueness(x, s + 1).passed);
    CHECK(check_glueing(x, s + 2).passed);
  }
  auto d1 = oracle::ds_cyclic(2, 1, 3);
  auto u = check_uniqueness(d1, 1);
  CHECK_FALSE(u.passed);
  CHECK(replay_failure(d1, u));
  // uniqueness propagates upward on fibrant spaces
  for (int t = 2; t <= 3; ++t) CHECK(check_uniqueness(d1, t).passed);
}

TEST_CASE("failures are witnessed and replay") {
  // all 1-configurations but only the constant 2-cubes: corners fail to complete
  std::vector<std::vector<CubeCode>> cubes(3);
  cubes[0] = {0, 1};
  cubes[1] = {0, 1, 2, 3};
  cubes[2] = {0, 15};
  FiniteCubespace x(2, cubes);
  auto f = check_fibrant(x, 2);
  CHECK_FALSE(f.passed);
  CHECK(replay_failure(x, f));

  // glueing failure: C^1 = {00, 01, 10, 11} minus nothing, and C^2 = concatenations chosen by hand
  auto full = full_cubespace(3, 1);
  std::vector<std::vector<CubeCode>> g{full.cubes(0).codes(), {0, 1, 3, 4, 8}};
  FiniteCubespace y(3, g);  // (0,0),(0,1),(1,0),(1,1),(2,2): 0~1 ~ but not to 2 — glueing holds
  CHECK(check_glueing(y, 1).passed);
  std::vector<std::vector<CubeCode>> h{full.cubes(0).codes(), {0, 1, 3, 4, 5, 7, 8}};
  FiniteCubespace z(3, h);  // 0-1, 1-2 cubes but not 0-2
  auto gv = check_glueing(z, 1);
  CHECK_FALSE(gv.passed);
  CHECK(replay_failure(z, gv));
}

TEST_CASE("nilspace degree") {
  CHECK(nilspace_degree(oracle::ds_cyclic(4, 1, 3)).degree == 1);
  auto c = nilspace_degree(oracle::ds_cyclic(2, 2, 4));
  CHECK(c.is_nilspace);
  CHECK(c.degree == 2);
  CHECK(c.ergodic_level == 2);
  auto p = nilspace_degree(point_cubespace(3));
  CHECK(p.degree == 0);
}
