#include "doctest.h"
#include "nilkit/constructions.hpp"
#include "nilkit/factors.hpp"
#include "nilkit/fibrations.hpp"
#include "nilkit/translations.hpp"
#include "oracles.hpp"

using namespace nilkit;

namespace {

Permutation shift_by(PointId n, PointId a) {
  Permutation p(n);
  for (PointId x = 0; x < n; ++x) p[x] = (x + a) % n;
  return p;
}

SpacePtr hk_z4_deg2(int lmax) {
  auto z4 = cyclic_group(4);
  auto f = validate_filtration(z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
  return share(hk_nilspace(z4, f, trivial_subgroup(z4), lmax));
}

}  // namespace

TEST_CASE("translation membership") {
  auto x = oracle::ds_cyclic(2, 1, 3);
  CHECK(is_translation(x, {0, 1}, 1, 3).passed);
  CHECK(is_translation(x, {0, 1}, 3, 3).passed);
  CHECK(is_translation(x, {1, 0}, 1, 3).passed);
  auto v = is_translation(x, {1, 0}, 2, 3);
  CHECK_FALSE(v.passed);
  CHECK(v.witness->face.has_value());
  CHECK_THROWS_AS(is_translation(x, {0, 0}, 1, 3), InputError);
  CHECK_THROWS_AS(is_translation(x, {0, 1}, 0, 3), InputError);
  CHECK_THROWS_AS(is_translation(x, {0, 1}, 1, 4), InputError);

  // elements of G_i act as i-translations on HK(D4)
  auto d4 = dihedral_group(4);
  auto filt = lower_central_series(d4);
  auto hk = hk_nilspace(d4, filt, trivial_subgroup(d4), 3);
  for (int i = 1; i <= 2; ++i)
    for (Element g : filt.level(i).elements()) {
      Permutation p(8);
      for (Element y = 0; y < 8; ++y) p[y] = d4.mul(g, y);
      CHECK(is_translation(hk, p, i, 3).passed);
    }
  // r is not a 2-translation
  Permutation r(8);
  for (Element y = 0; y < 8; ++y) r[y] = d4.mul(1, y);
  CHECK_FALSE(is_translation(hk, r, 2, 3).passed);
}

TEST_CASE("translation groups by brute force") {
  auto d12 = oracle::ds_cyclic(2, 1, 3);
  auto a1 = translation_group(d12, 1);
  CHECK(a1.exhaustive);
  CHECK(a1.elements.size() == 2);
  CHECK(translation_group(d12, 2).elements.size() == 1);

  auto d14 = oracle::ds_cyclic(4, 1, 3);
  auto f = translation_filtration(d14);
  REQUIRE(f.levels.size() == 3);
  CHECK(f.nesting.passed);
  CHECK(f.commutators.passed);
  for (PointId a = 0; a < 4; ++a) {
    auto p = shift_by(4, a);
    CHECK(std::find(f.levels[0].elements.begin(), f.levels[0].elements.end(), p) != f.levels[0].elements.end());
  }
  CHECK(f.levels[0].elements.size() == 4);
  CHECK(f.levels[1].elements.size() == 1);

  // the structure group acts by 1-translations
  auto a = structure_group(d14, 1);
  for (Element e = 0; e < a.group.order(); ++e) {
    Permutation p(4);
    for (PointId x = 0; x < 4; ++x) p[x] = a.act(e, x);
    CHECK(is_translation(d14, p, 1, 3).passed);
  }

  auto d24 = oracle::ds_cyclic(4, 2, 3);
  auto f2 = translation_filtration(d24);
  CHECK(f2.nesting.passed);
  CHECK(f2.commutators.passed);
  CHECK(f2.levels[1].elements.size() >= 4);

  auto gen = generated_translation_group(d14, 1, {shift_by(4, 1), {1, 0, 2, 3}});
  CHECK_FALSE(gen.exhaustive);
  CHECK(gen.elements.size() == 4);
  auto big = share(oracle::ds_cyclic(3, 1, 2));
  CHECK(translation_group(*big, 1).elements.size() == 3);
}

TEST_CASE("push and pull") {
  auto x = share(oracle::ds_cyclic(4, 1, 3));
  auto y = share(oracle::ds_cyclic(2, 1, 3));
  CubespaceMap m(x, y, {0, 1, 0, 1});
  auto plus1 = make_translation(x, shift_by(4, 1), 1);
  REQUIRE(plus1.status.passed());
  auto down = push_translation(m, plus1);
  CHECK(down.perm == Permutation{1, 0});
  CHECK(down.status.passed());

  auto lifts = pull_translation(m, down);
  std::vector<Permutation> perms;
  for (const auto& t : lifts) perms.push_back(t.perm);
  std::sort(perms.begin(), perms.end());
  CHECK(perms == std::vector<Permutation>{shift_by(4, 1), shift_by(4, 3)});

  auto id_lifts = pull_translation(m, make_translation(y, {0, 1}, 1));
  CHECK(id_lifts.size() == 2);  // id and +2

  auto same = push_translation(identity_map(x), plus1);
  CHECK(same.perm == plus1.perm);
  CHECK(pull_translation(identity_map(x), plus1).size() == 1);

  // +2 preserves the fibres {0,2}, {1,3}
  auto plus2 = make_translation(x, shift_by(4, 2), 1);
  CHECK(push_translation(m, plus2).perm == Permutation{0, 1});

  // a map collapsing a non-invariant pair
  auto z = share(quotient_cubespace(*x, EquivRelation::from_labels({0, 0, 1, 1})).space);
  CubespaceMap bad(x, z, {0, 0, 1, 1});
  CHECK_THROWS_AS(push_translation(bad, make_translation(x, shift_by(4, 1), 1)), DescentError);
  // pull then push recovers f', push then pull recovers f
  for (const auto& t : lifts) CHECK(push_translation(m, t).perm == down.perm);
}

TEST_CASE("fibres under 1-translations") {
  auto x = hk_z4_deg2(3);
  auto y = share(oracle::ds_cyclic(2, 1, 3));
  CubespaceMap vertical(x, y, {0, 1, 0, 1});
  CHECK(classify(vertical, 2).kind == FibrationKind::Vertical);
  for (PointId a = 0; a < 4; ++a) CHECK(check_respects_fibres(vertical, shift_by(4, a)).passed);

  // horizontal quotient by the straight classes {0,1}, {2,3}: x+1 moves {0,1} onto {1,2}
  auto q = share(quotient_cubespace(*x, EquivRelation::from_labels({0, 0, 1, 1})).space);
  CubespaceMap horizontal(x, q, {0, 0, 1, 1});
  CHECK(check_fibration(horizontal, 3).passed);
  CHECK(classify(horizontal, 2).kind == FibrationKind::Horizontal);
  auto v = check_respects_fibres(horizontal, shift_by(4, 1));
  CHECK_FALSE(v.passed);
  CHECK(v.witness->ints == std::vector<std::int64_t>{0, 1});
}
