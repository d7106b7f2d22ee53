#pragma once

// Brute-force reference constructions used as test oracles. They avoid the
// library's fast paths (corner engine, orbit closure) on purpose.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "nilkit/cube.hpp"
#include "nilkit/cubespace.hpp"
#include "nilkit/group.hpp"

namespace oracle {

using namespace nilkit;

// Every l-configuration over n points, in code order.
inline std::vector<std::vector<PointId>> all_configs(PointId n, int l) {
  std::vector<std::vector<PointId>> out;
  std::vector<PointId> v(vertex_count(l), 0);
  while (true) {
    out.push_back(v);
    int k = static_cast<int>(v.size()) - 1;
    while (k >= 0 && v[k] == n - 1) v[k--] = 0;
    if (k < 0) break;
    ++v[k];
  }
  return out;
}

// D_s(Z/m) straight from the definition: every morphism {0,1}^{s+1} -> {0,1}^l
// has vanishing alternating sum.
inline FiniteCubespace ds_cyclic(std::uint32_t m, int s, int lmax) {
  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= lmax; ++l) {
    ConfigCodec codec(m, l);
    auto phis = enumerate_morphisms(s + 1, l);
    std::vector<std::vector<VertexIndex>> tables;
    for (const auto& p : phis) tables.push_back(p.vertex_table());
    std::vector<CubeCode> set;
    for (const auto& c : all_configs(m, l)) {
      bool ok = true;
      for (const auto& t : tables) {
        std::int64_t sum = 0;
        for (VertexIndex w = 0; w < t.size(); ++w) sum += vertex_sign(w) * static_cast<std::int64_t>(c[t[w]]);
        if (((sum % m) + m) % m != 0) {
          ok = false;
          break;
        }
      }
      if (ok) set.push_back(codec.encode(c));
    }
    cubes.push_back(std::move(set));
  }
  return FiniteCubespace(m, std::move(cubes));
}

// Number of corners by scanning all (2^l - 1)-tuples and testing faces.
inline std::uint64_t count_corners(const FiniteCubespace& x, int l) {
  if (l == 0) return 1;
  std::uint64_t count = 0;
  for (const auto& c : all_configs(x.points(), l)) {
    if (c.back() != 0) continue;
    Configuration cfg(l, c);
    bool ok = true;
    for (int i = 1; i <= l && ok; ++i) ok = x.contains(slice(cfg, i, 0));
    if (ok) ++count;
  }
  return count;
}

// Closure of a generator set in a group, by repeated products until stable.
inline std::set<Element> naive_closure(const FiniteGroup& g, const std::vector<Element>& gens) {
  std::set<Element> s{g.identity()};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Element> cur(s.begin(), s.end());
    for (Element a : cur) {
      for (Element b : gens) {
        if (s.insert(g.mul(a, b)).second) grew = true;
      }
    }
  }
  return s;
}

}  // namespace oracle

namespace oracle {

// Subgroup of G^{2^l} generated by the given tuples, by naive closure.
inline std::set<std::vector<Element>> product_closure(const FiniteGroup& g, int l,
                                                      const std::vector<std::vector<Element>>& gens) {
  std::set<std::vector<Element>> s{std::vector<Element>(vertex_count(l), g.identity())};
  std::vector<std::vector<Element>> frontier(s.begin(), s.end());
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& a : frontier)
      for (const auto& b : gens) {
        std::vector<Element> ab(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) ab[i] = g.mul(a[i], b[i]);
        if (s.insert(ab).second) next.push_back(ab);
      }
    frontier = std::move(next);
  }
  return s;
}

// [g]_F as a tuple.
inline std::vector<Element> face_element(const FiniteGroup& g, const Face& f, Element a) {
  std::vector<Element> t(vertex_count(f.ambient_dim()), g.identity());
  for (VertexIndex w : f.members()) t[w] = a;
  return t;
}

}  // namespace oracle
