#include "doctest.h"
#include "nilkit/group.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>

using namespace nilkit;

namespace {

std::vector<Element> cyclic_table(std::uint32_t n) {
  std::vector<Element> t(n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return t;
}

// element orders histogram of a group, an isomorphism invariant
std::map<std::uint32_t, int> order_profile(const FiniteGroup& g) {
  std::map<std::uint32_t, int> h;
  for (Element a = 0; a < g.order(); ++a) ++h[g.element_order(a)];
  return h;
}

}  // namespace

TEST_CASE("validate_group accepts and rejects") {
  auto z3 = validate_group(3, cyclic_table(3));
  CHECK(z3.identity() == 0);
  CHECK(z3.is_abelian());

  auto bad = cyclic_table(4);
  bad[1 * 4 + 2] = 0;
  try {
    validate_group(4, bad);
    FAIL("expected NotAGroup");
  } catch (const NotAGroup& e) {
    CHECK(!e.witness().empty());
    CHECK(e.code() == "group.NotAGroup");
  }

  // S3 from permutation composition
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<Element> t(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<std::uint32_t> ab(3);
      for (int i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];
      t[a * 6 + b] = static_cast<Element>(std::find(perms.begin(), perms.end(), ab) - perms.begin());
    }
  auto s3 = validate_group(6, t);
  CHECK_FALSE(s3.is_abelian());
  CHECK(find_isomorphism(s3, symmetric_group(3)).has_value());
}

TEST_CASE("subgroup closure against naive closure") {
  auto d4 = dihedral_group(4);
  Element r = 1;
  auto c = subgroup_closure(d4, std::vector<Element>{r});
  CHECK(c.order() == 4);
  CHECK(subgroup_closure(d4, std::vector<Element>{}).order() == 1);
  for (Element a = 0; a < 8; ++a)
    for (Element b = 0; b < 8; ++b) {
      std::vector<Element> gens{a, b};
      auto s = subgroup_closure(d4, gens);
      auto o = oracle::naive_closure(d4, gens);
      CHECK(std::vector<Element>(o.begin(), o.end()) == s.elements());
    }
  auto s3 = symmetric_group(3);
  std::vector<Element> transpositions;
  for (Element a = 0; a < 6; ++a)
    if (a != s3.identity() && s3.element_order(a) == 2) transpositions.push_back(a);
  CHECK(subgroup_closure(s3, transpositions).order() == 6);
}

TEST_CASE("commutator subgroups") {
  auto z6 = cyclic_group(6);
  CHECK(commutator_subgroup(z6, whole_group(z6), whole_group(z6)).order() == 1);
  auto s3 = symmetric_group(3);
  auto a3 = commutator_subgroup(s3, whole_group(s3), whole_group(s3));
  CHECK(a3.order() == 3);
  auto d4 = dihedral_group(4);
  auto z = commutator_subgroup(d4, whole_group(d4), whole_group(d4));
  CHECK(z.elements() == std::vector<Element>{0, 2});
}

TEST_CASE("lower central series") {
  auto f = lower_central_series(cyclic_group(4));
  CHECK(f.degree() == 1);
  CHECK(f.proper());
  auto d = lower_central_series(dihedral_group(4));
  CHECK(d.degree() == 2);
  CHECK(d.level(2).elements() == std::vector<Element>{0, 2});
  CHECK(d.level(3).order() == 1);
  CHECK(d.level(7).order() == 1);
  CHECK_THROWS_AS(lower_central_series(symmetric_group(3)), FiltrationError);
  CHECK(lower_central_series(cyclic_group(1)).degree() == 0);

  for (auto g : {dihedral_group(4), dihedral_group(8), cyclic_group(12)}) {
    auto lcs = lower_central_series(g);
    std::vector<std::vector<Element>> chain;
    for (const auto& l : lcs.levels()) chain.push_back(l.elements());
    CHECK(validate_filtration(g, chain).degree() == lcs.degree());
  }
}

TEST_CASE("validate_filtration violations") {
  auto z4 = cyclic_group(4);
  auto f = validate_filtration(z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
  CHECK(f.degree() == 2);
  CHECK(f.proper());

  auto d4 = dihedral_group(4);
  std::vector<Element> all{0, 1, 2, 3, 4, 5, 6, 7};
  try {
    validate_filtration(d4, {all, all, all, {0, 2}, {0}});
    FAIL("expected violation");
  } catch (const FiltrationError& e) {
    CHECK(e.code() == "group.BracketViolation");
    REQUIRE(e.witness().size() == 4);
  }
  try {
    validate_filtration(d4, {all, all, {0}});
    FAIL("expected violation");
  } catch (const FiltrationError& e) {
    CHECK(e.code() == "group.BracketViolation");
    CHECK(e.witness()[0] == 1);
    CHECK(e.witness()[1] == 1);
  }
  CHECK_THROWS_AS(validate_filtration(z4, {{0, 1, 2, 3}, {0, 1}, {0}}), FiltrationError);
  CHECK_THROWS_AS(validate_filtration(z4, {{0, 2}, {0, 1, 2, 3}, {0}}), FiltrationError);
}

TEST_CASE("quotients") {
  auto d4 = dihedral_group(4);
  auto q = quotient_group(d4, Subgroup({0, 2}));
  CHECK(q.group.order() == 4);
  CHECK(q.group.is_abelian());
  CHECK(abelian_invariants(q.group).invariants() == std::vector<std::uint32_t>{2, 2});
  CHECK(is_homomorphism(d4, q.group, q.projection));
  std::vector<Element> kernel;
  for (Element a = 0; a < 8; ++a)
    if (q.projection[a] == q.group.identity()) kernel.push_back(a);
  CHECK(kernel == std::vector<Element>{0, 2});

  CHECK(quotient_group(d4, whole_group(d4)).group.order() == 1);
  auto z = quotient_group(cyclic_group(4), Subgroup({0, 2}));
  CHECK(abelian_invariants(z.group).invariants() == std::vector<std::uint32_t>{2});
  CHECK_THROWS_AS(quotient_group(d4, Subgroup({0, 4})), FiltrationError);
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(cyclic_group(6)).invariants() == std::vector<std::uint32_t>{6});
  CHECK(abelian_invariants(direct_product(cyclic_group(2), cyclic_group(4))).invariants() ==
        std::vector<std::uint32_t>{2, 4});
  CHECK(abelian_invariants(cyclic_group(1)).invariants().empty());
  CHECK(abelian_invariants(direct_product(cyclic_group(6), cyclic_group(4))).invariants() ==
        std::vector<std::uint32_t>{2, 12});
  CHECK_THROWS_AS(abelian_invariants(dihedral_group(4)), FiltrationError);

  // isomorphism property, exhaustively
  for (auto g : {direct_product(cyclic_group(6), cyclic_group(10)), direct_product(cyclic_group(2), cyclic_group(8))}) {
    auto a = abelian_invariants(g);
    auto prod = std::accumulate(a.invariants().begin(), a.invariants().end(), 1u, std::multiplies<>());
    CHECK(prod == g.order());
    for (std::size_t i = 1; i < a.invariants().size(); ++i) CHECK(a.invariants()[i] % a.invariants()[i - 1] == 0);
    for (Element x = 0; x < g.order(); ++x) {
      CHECK(a.from_coordinates(a.coordinates(x)) == x);
      for (Element y = 0; y < g.order(); ++y) {
        auto cx = a.coordinates(x), cy = a.coordinates(y), cs = a.coordinates(g.mul(x, y));
        for (std::size_t i = 0; i < cx.size(); ++i) REQUIRE(cs[i] == (cx[i] + cy[i]) % a.invariants()[i]);
      }
    }
  }
}

TEST_CASE("standard groups") {
  CHECK(symmetric_group(4).order() == 24);
  auto a5 = alternating_group(5);
  CHECK(a5.order() == 60);
  CHECK(commutator_subgroup(a5, whole_group(a5), whole_group(a5)).order() == 60);
  auto d4 = dihedral_group(4);
  CHECK(order_profile(d4) == std::map<std::uint32_t, int>{{1, 1}, {2, 5}, {4, 2}});
  auto q8 = permutation_group({{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}});
  CHECK(q8.order() == 8);
  CHECK_FALSE(find_isomorphism(d4, q8).has_value());
  auto iso = find_isomorphism(d4, dihedral_group(4));
  REQUIRE(iso.has_value());
  CHECK(is_homomorphism(d4, d4, *iso));
}
