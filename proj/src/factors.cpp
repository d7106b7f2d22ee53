#include "nilkit/factors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nilkit/constructions.hpp"
#include "nilkit/error.hpp"

namespace nilkit {

namespace {

void require_level(const FiniteCubespace& x, int l, const char* what) {
  if (l < 0 || l > x.lmax())
    throw InputError("factors.BadLevel", std::string(what) + " needs cubes of dimension " + std::to_string(l));
}

}  // namespace

CanonicalRelation canonical_relation_report(const FiniteCubespace& x, int s) {
  require_level(x, s + 1, "canonical_relation");
  const PointId n = x.points();
  const CubeSet& set = x.cubes(s + 1);
  CanonicalRelation out;
  out.s = s;
  out.generated = PairRelation(n);
  // cubes agreeing off the top vertex are adjacent in code order
  std::size_t k = 0;
  std::vector<PointId> tops;
  while (k < set.size()) {
    const CubeCode head = set[k] / n;
    tops.clear();
    while (k < set.size() && set[k] / n == head) tops.push_back(static_cast<PointId>(set[k++] % n));
    for (PointId a : tops)
      for (PointId b : tops) out.generated.set(a, b);
  }
  out.transitive = check_equivalence(out.generated);
  out.transitive.check = "canonical-transitive";
  out.transitive.level = s;
  out.relation = equivalence_closure(out.generated);
  return out;
}

EquivRelation canonical_relation(const FiniteCubespace& x, int s) { return canonical_relation_report(x, s).relation; }

CornerRelation canonical_relation_corner(const FiniteCubespace& x, int s) {
  require_level(x, s + 1, "canonical_relation_corner");
  const PointId n = x.points();
  const CubeSet& set = x.cubes(s + 1);
  CornerRelation out;
  out.s = s;
  out.pairs = PairRelation(n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b)
      if (set.contains(set.codec().encode(corner_pattern(s + 1, a, b)))) out.pairs.set(a, b);
  out.equivalence = check_equivalence(out.pairs);
  out.equivalence.level = s;
  if (out.equivalence.passed) out.relation = equivalence_closure(out.pairs);
  return out;
}

QuotientSpace quotient_cubespace(const FiniteCubespace& x, const EquivRelation& r) {
  if (r.size() != x.points()) throw InputError("factors.BadRelation", "relation size differs from the space");
  const PointId m = r.class_count();
  std::vector<std::vector<CubeCode>> cubes;
  std::vector<PointId> vals;
  for (int l = 0; l <= x.lmax(); ++l) {
    const CubeSet& src = x.cubes(l);
    const ConfigCodec codec(m, l);
    vals.resize(vertex_count(l));
    std::vector<CubeCode> image;
    image.reserve(src.size());
    for (CubeCode c : src.codes()) {
      src.codec().decode(c, vals);
      for (auto& v : vals) v = r.class_of(v);
      image.push_back(codec.encode(vals));
    }
    cubes.push_back(std::move(image));
  }
  return QuotientSpace{FiniteCubespace(m, std::move(cubes)), r.labels()};
}

Tower canonical_tower(const SpacePtr& x) {
  const auto cert = nilspace_degree(*x);
  if (!cert.is_nilspace) throw InputError("factors.NotNilspace", "canonical_tower needs a nilspace: " + cert.reason);
  Tower tower;
  tower.degree = *cert.degree;
  tower.base = x;
  for (int t = 0; t <= tower.degree; ++t) {
    TowerLevel level;
    level.t = t;
    level.relation = canonical_relation(*x, t);
    auto q = quotient_cubespace(*x, level.relation);
    level.space = share(std::move(q.space));
    level.projection = CubespaceMap(x, level.space, std::move(q.projection));
    check_morphism(level.projection);
    tower.fibration_checks.push_back(check_fibration(level.projection, x->lmax()));
    tower.levels.push_back(std::move(level));
  }
  return tower;
}

StructureGroup structure_group(const FiniteCubespace& x, int s) {
  require_level(x, s + 1, "structure_group");
  const PointId n = x.points();
  StructureGroup out;
  out.s = s;
  out.points = n;
  out.fibers = s >= 1 ? canonical_relation(x, s - 1) : EquivRelation::full(n);

  // Y, indexed in lexicographic (x,y) order
  std::vector<std::pair<PointId, PointId>> ys;
  std::vector<std::uint32_t> yindex(static_cast<std::size_t>(n) * n, UINT32_MAX);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b)
      if (out.fibers.related(a, b)) {
        yindex[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint32_t>(ys.size());
        ys.emplace_back(a, b);
      }
  check_guard("structure_group pairs", static_cast<std::uint64_t>(ys.size()) * ys.size());

  // (x,y) ~ (x',y') iff [corner(x;y), corner(x';y')] is a cube; concatenation
  // along the last axis puts the second pattern in the low digits
  const ConfigCodec scodec(n, s);
  const CubeSet& top = x.cubes(s + 1);
  const std::uint64_t half = scodec.space_size();
  PairRelation approx(static_cast<PointId>(ys.size()));
  std::vector<PointId> vals(vertex_count(s));
  for (std::uint32_t i = 0; i < ys.size(); ++i) {
    const CubeCode head = scodec.encode(corner_pattern(s, ys[i].first, ys[i].second));
    auto [lo, hi] = top.range(head * half, head * half + (half - 1));
    for (std::size_t k = lo; k < hi; ++k) {
      scodec.decode(top[k] % half, vals);
      const PointId y2 = vals.back();
      if (s == 0) {
        for (PointId x2 = 0; x2 < n; ++x2)
          if (auto j = yindex[static_cast<std::size_t>(x2) * n + y2]; j != UINT32_MAX) approx.set(i, j);
        continue;
      }
      const PointId x2 = vals.front();
      if (!std::all_of(vals.begin(), vals.end() - 1, [&](PointId v) { return v == x2; })) continue;
      if (auto j = yindex[static_cast<std::size_t>(x2) * n + y2]; j != UINT32_MAX) approx.set(i, j);
    }
  }
  if (auto eq = check_equivalence(approx); !eq.passed) {
    std::vector<std::int64_t> w;
    for (auto j : eq.witness->ints) {
      w.push_back(ys[j].first);
      w.push_back(ys[j].second);
    }
    throw StructureError("factors.NotEquivalence", "the relation on Y is not an equivalence (" + eq.detail + ")", w);
  }
  const EquivRelation classes = equivalence_closure(approx);

  // each class is the graph of a bijection of X
  const std::uint32_t m = classes.class_count();
  std::vector<std::vector<PointId>> graph(m, std::vector<PointId>(n, n));
  for (std::uint32_t k = 0; k < m; ++k) {
    for (std::uint32_t j : classes.members(k)) {
      auto [a, b] = ys[j];
      if (graph[k][a] != n)
        throw StructureError("factors.NotGraph", "a class has two pairs over one point", {k, a, graph[k][a], b});
      graph[k][a] = b;
    }
    std::vector<char> hit(n, 0);
    for (PointId a = 0; a < n; ++a) {
      if (graph[k][a] == n) throw StructureError("factors.NotGraph", "a class misses a point", {k, a});
      if (hit[graph[k][a]]) throw StructureError("factors.NotGraph", "a class is not injective", {k, a});
      hit[graph[k][a]] = 1;
    }
  }
  if (m > kMaxGroupOrder) throw InputError("factors.TooLarge", "structure group exceeds the group order cap");
  std::vector<Element> table(static_cast<std::size_t>(m) * m);
  std::vector<PointId> composed(n);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) {
      for (PointId p = 0; p < n; ++p) composed[p] = graph[a][graph[b][p]];
      const std::uint32_t c = classes.class_of(yindex[composed[0]]);
      if (graph[c] != composed)
        throw StructureError("factors.NotGroup", "composition of two classes is not a class", {a, b});
      table[static_cast<std::size_t>(a) * m + b] = c;
    }
  out.group = abelian_invariants(validate_group(m, std::move(table)));

  out.action.resize(static_cast<std::size_t>(m) * n);
  out.difference.assign(static_cast<std::size_t>(n) * n, UINT32_MAX);
  for (std::uint32_t a = 0; a < m; ++a)
    for (PointId p = 0; p < n; ++p) {
      out.action[static_cast<std::size_t>(a) * n + p] = graph[a][p];
      out.difference[static_cast<std::size_t>(p) * n + graph[a][p]] = a;
    }

  out.free = Verdict::pass("free", s, static_cast<std::uint64_t>(m) * n);
  for (std::uint32_t a = 0; a < m && out.free.passed; ++a) {
    if (a == out.group.zero()) continue;
    for (PointId p = 0; p < n; ++p)
      if (graph[a][p] == p) {
        Witness w;
        w.ints = {a, p};
        out.free = Verdict::fail("free", s, "a nonzero element fixes a point", std::move(w));
        break;
      }
  }
  out.orbits = Verdict::pass("orbits", s, static_cast<std::uint64_t>(n) * n);
  for (PointId p = 0; p < n && out.orbits.passed; ++p)
    for (PointId q = 0; q < n; ++q) {
      const bool in_orbit = out.diff(p, q) != UINT32_MAX;
      if (in_orbit != out.fibers.related(p, q)) {
        Witness w;
        w.ints = {p, q};
        out.orbits = Verdict::fail("orbits", s, "orbit and fibre of a point differ", std::move(w));
        break;
      }
    }
  return out;
}

StructureGroup structure_group_at(const Tower& tower, int t) {
  if (t < 0 || t >= static_cast<int>(tower.levels.size()))
    throw InputError("factors.BadLevel", "tower has no level " + std::to_string(t));
  return structure_group(*tower.levels[t].space, t);
}

Verdict check_replacement(const FiniteCubespace& x, int t, int up_to) {
  const EquivRelation rel = canonical_relation(x, t);
  const int top = std::min({t + 1, up_to, x.lmax()});
  const PointId m = rel.class_count();
  std::uint64_t examined = 0;
  std::vector<PointId> vals;
  for (int l = 0; l <= top; ++l) {
    const CubeSet& set = x.cubes(l);
    const ConfigCodec qcodec(m, l);
    vals.resize(vertex_count(l));
    // cubes over each image configuration must fill the whole product of classes
    std::map<CubeCode, std::pair<std::uint64_t, CubeCode>> count;  // image -> (cubes, one cube)
    for (CubeCode c : set.codes()) {
      set.codec().decode(c, vals);
      for (auto& v : vals) v = rel.class_of(v);
      auto& e = count[qcodec.encode(vals)];
      if (e.first++ == 0) e.second = c;
    }
    for (const auto& [image, e] : count) {
      ++examined;
      qcodec.decode(image, vals);
      std::uint64_t box = 1;
      for (PointId v : vals) box *= rel.members(v).size();
      if (box == e.first) continue;
      // find a replacement outside C^l
      std::vector<std::size_t> idx(vals.size(), 0);
      Configuration cand(l, std::vector<PointId>(vals.size()));
      while (true) {
        for (std::size_t w = 0; w < vals.size(); ++w) cand[w] = rel.members(vals[w])[idx[w]];
        if (!x.contains(cand)) {
          Witness wit;
          wit.configs = {set.codec().decode(e.second), cand};
          return Verdict::fail("replacement", l, "a vertex-wise ~_t replacement of a cube is not a cube",
                               std::move(wit));
        }
        std::size_t w = 0;
        while (w < idx.size() && ++idx[w] == rel.members(vals[w]).size()) idx[w++] = 0;
        if (w == idx.size()) break;
      }
    }
  }
  return Verdict::pass("replacement", top, examined);
}

bool WeakStructureCertificate::passed() const {
  return item1.passed && replacement.passed &&
         std::all_of(item2.begin(), item2.end(), [](const Verdict& v) { return v.passed; });
}

WeakStructureCertificate verify_weak_structure(const FiniteCubespace& x, const StructureGroup& a,
                                               std::uint64_t sample_limit) {
  const int s = a.s;
  WeakStructureCertificate cert;
  cert.s = s;
  cert.item1 = a.free.passed ? a.orbits : a.free;
  cert.item1.check = "weak-structure-1";
  cert.replacement = s >= 1 ? check_replacement(x, s - 1, s) : Verdict::pass("replacement", 0, 0);

  const FiniteCubespace ds = standard_nilspace(a.group, s, x.lmax());
  const PointId na = a.group.order();
  for (int l = 0; l <= x.lmax(); ++l) {
    const bool sampled = l > s + 1;
    cert.sampled.push_back(sampled);
    const CubeSet& set = x.cubes(l);
    const CubeSet& dset = ds.cubes(l);
    const ConfigCodec acodec(na, l);
    const ConfigCodec qcodec(a.fibers.class_count(), l);
    const VertexIndex vc = vertex_count(l);

    // cubes bucketed by their image in pi_{s-1}
    std::vector<std::pair<CubeCode, CubeCode>> keyed;
    keyed.reserve(set.size());
    std::vector<PointId> vals(vc), avals(vc), c1(vc), c2(vc);
    for (CubeCode c : set.codes()) {
      set.codec().decode(c, vals);
      for (auto& v : vals) v = a.fibers.class_of(v);
      keyed.emplace_back(qcodec.encode(vals), c);
    }
    std::sort(keyed.begin(), keyed.end());

    Verdict v = Verdict::pass("weak-structure-2", l, 0);
    std::vector<CubeCode> diffs;
    std::size_t b = 0;
    bool stop = false;
    while (b < keyed.size() && v.passed && !stop) {
      std::size_t e = b;
      while (e < keyed.size() && keyed[e].first == keyed[b].first) ++e;
      // With A acting freely on the fibres the bucket is a coset D_s(A).c1
      // iff the differences to one cube c1 are distinct cubes of D_s(A) and
      // there are |D_s(A)| of them; pairwise differences then follow.
      set.codec().decode(keyed[b].second, c1);
      diffs.clear();
      for (std::size_t j = b; j < e; ++j) {
        set.codec().decode(keyed[j].second, c2);
        for (VertexIndex w = 0; w < vc; ++w) avals[w] = a.diff(c1[w], c2[w]);
        const CubeCode ac = acodec.encode(avals);
        ++v.examined;
        if (!dset.contains(ac)) {
          Witness wit;
          wit.configs = {Configuration(l, c1), Configuration(l, c2)};
          v = Verdict::fail("weak-structure-2", l, "a cube over the same base differs by a non-cube of D_s(A)",
                            std::move(wit));
          break;
        }
        diffs.push_back(ac);
      }
      if (!v.passed) break;
      std::sort(diffs.begin(), diffs.end());
      if (auto dup = std::adjacent_find(diffs.begin(), diffs.end()); dup != diffs.end()) {
        acodec.decode(*dup, avals);
        for (VertexIndex w = 0; w < vc; ++w) c2[w] = a.act(avals[w], c1[w]);
        Witness wit;
        wit.configs = {Configuration(l, c1), Configuration(l, c2)};
        v = Verdict::fail("weak-structure-2", l, "two cubes over the same base differ from c by the same element",
                          std::move(wit));
        break;
      }
      // every configuration a.c1 with a in D_s(A) must be a cube
      if (diffs.size() != dset.size()) {
        for (CubeCode d : dset.codes()) {
          if (std::binary_search(diffs.begin(), diffs.end(), d)) continue;
          acodec.decode(d, avals);
          for (VertexIndex w = 0; w < vc; ++w) c2[w] = a.act(avals[w], c1[w]);
          Witness wit;
          wit.configs = {Configuration(l, c1), Configuration(l, c2)};
          v = Verdict::fail("weak-structure-2", l, "a.c is not a cube although a is a cube of D_s(A)",
                            std::move(wit));
          break;
        }
      }
      v.examined += dset.size() - std::min<std::uint64_t>(dset.size(), diffs.size());
      if (sampled && v.examined >= sample_limit) stop = true;
      b = e;
    }
    if (sampled) v.detail = "sampled: first " + std::to_string(v.examined) + " pairs in code order";
    cert.item2.push_back(std::move(v));
  }
  return cert;
}

}  // namespace nilkit
