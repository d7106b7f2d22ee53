#include "nilkit/constructions.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <absl/container/flat_hash_set.h>

#include "nilkit/error.hpp"

namespace nilkit {

GroupAction::GroupAction(FiniteGroup group, PointId points, std::vector<PointId> table)
    : group_(std::move(group)), n_(points), table_(std::move(table)) {
  const std::uint32_t h = group_.order();
  if (table_.size() != static_cast<std::size_t>(h) * n_)
    throw InputError("constructions.NotAnAction", "action table has the wrong size");
  for (PointId p : table_)
    if (p >= n_) throw InputError("constructions.NotAnAction", "action table entry out of range");
  for (PointId x = 0; x < n_; ++x)
    if (act(group_.identity(), x) != x)
      throw InputError("constructions.NotAnAction", "identity moves point " + std::to_string(x));
  for (Element a = 0; a < h; ++a)
    for (Element b = 0; b < h; ++b)
      for (PointId x = 0; x < n_; ++x)
        if (act(group_.mul(a, b), x) != act(a, act(b, x)))
          throw InputError("constructions.NotAnAction", "(ab).x != a.(b.x) for a=" + std::to_string(a) +
                                                            " b=" + std::to_string(b) + " x=" + std::to_string(x));
  transitive_ = orbits().class_count() <= 1;
}

std::vector<PointId> GroupAction::permutation(Element h) const {
  return std::vector<PointId>(table_.begin() + static_cast<std::ptrdiff_t>(h) * n_,
                              table_.begin() + static_cast<std::ptrdiff_t>(h + 1) * n_);
}

EquivRelation GroupAction::orbits() const {
  std::vector<std::uint32_t> label(n_, UINT32_MAX);
  for (PointId x = 0; x < n_; ++x) {
    if (label[x] != UINT32_MAX) continue;
    for (Element h = 0; h < group_.order(); ++h) label[act(h, x)] = x;
  }
  return EquivRelation::from_labels(label);
}

GroupAction left_translation(const FiniteGroup& g) {
  return GroupAction(g, g.order(), g.table());
}

GroupAction coset_action(const FiniteGroup& g, const Subgroup& gamma, std::vector<Element>* representatives) {
  const std::uint32_t n = g.order();
  std::vector<Element> least(n);
  for (Element a = 0; a < n; ++a) {
    Element m = a;
    for (Element y : gamma.elements()) m = std::min(m, g.mul(a, y));
    least[a] = m;
  }
  std::vector<Element> reps(least);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  auto index = [&](Element a) {
    return static_cast<PointId>(std::lower_bound(reps.begin(), reps.end(), least[a]) - reps.begin());
  };
  const auto k = static_cast<PointId>(reps.size());
  std::vector<PointId> table(static_cast<std::size_t>(n) * k);
  for (Element h = 0; h < n; ++h)
    for (PointId c = 0; c < k; ++c) table[static_cast<std::size_t>(h) * k + c] = index(g.mul(h, reps[c]));
  if (representatives) *representatives = reps;
  return GroupAction(g, k, std::move(table));
}

GroupAction pullback_action(const FiniteGroup& g, const std::vector<Element>& hom, const GroupAction& act) {
  if (hom.size() != g.order()) throw InputError("constructions.NotAnAction", "homomorphism has the wrong size");
  const PointId n = act.points();
  std::vector<PointId> table(static_cast<std::size_t>(g.order()) * n);
  for (Element h = 0; h < g.order(); ++h) {
    if (hom[h] >= act.group().order()) throw InputError("constructions.NotAnAction", "image out of range");
    for (PointId x = 0; x < n; ++x) table[static_cast<std::size_t>(h) * n + x] = act.act(hom[h], x);
  }
  return GroupAction(g, n, std::move(table));
}

std::vector<CubeCode> face_orbit(PointId points, int dim, const std::vector<CubeCode>& seeds,
                                 const std::vector<FacePermutation>& generators) {
  const ConfigCodec codec(points, dim);
  const std::uint64_t space = codec.space_size();

  const VertexIndex vcount = codec.vertices();
  struct Step {
    std::vector<VertexIndex> members;
    const std::vector<PointId>* perm;
  };
  std::vector<Step> steps;
  for (const auto& g : generators) {
    if (g.face.ambient_dim() != dim || g.perm.size() != points)
      throw InputError("constructions.BadGenerator", "face or permutation does not match the orbit");
    steps.push_back({g.face.members(), &g.perm});
  }

  constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 28;
  const bool bitmap = space <= kBitmapLimit;
  std::vector<std::uint64_t> bits(bitmap ? space / 64 + 1 : 0);
  absl::flat_hash_set<CubeCode> hashed;
  std::vector<CubeCode> found, stack;

  auto visit = [&](CubeCode c) {
    if (bitmap) {
      auto& word = bits[c >> 6];
      const std::uint64_t mask = std::uint64_t{1} << (c & 63);
      if (word & mask) return;
      word |= mask;
    } else if (!hashed.insert(c).second) {
      return;
    }
    found.push_back(c);
    stack.push_back(c);
    if ((found.size() & 0xFFFF) == 0) check_guard("face_orbit", found.size());
  };
  for (CubeCode c : seeds) {
    if (space != UINT64_MAX && c >= space) throw InputError("constructions.BadSeed", "seed code out of range");
    visit(c);
  }
  std::vector<PointId> digits(vcount);
  std::vector<std::uint64_t> weight(vcount);
  for (VertexIndex w = 0; w < vcount; ++w) weight[w] = codec.weight(w);
  while (!stack.empty() && found.size() != space) {
    const CubeCode c = stack.back();
    stack.pop_back();
    codec.decode(c, digits);
    for (const auto& s : steps) {
      CubeCode d = c;
      for (VertexIndex w : s.members) {
        const PointId digit = digits[w];
        d += (static_cast<CubeCode>((*s.perm)[digit]) - digit) * weight[w];
      }
      visit(d);
    }
  }
  check_guard("face_orbit", found.size());
  std::sort(found.begin(), found.end());
  return found;
}

namespace {

std::vector<PointId> left_mult(const FiniteGroup& g, Element a) {
  std::vector<PointId> p(g.order());
  for (Element x = 0; x < g.order(); ++x) p[x] = g.mul(a, x);
  return p;
}

std::vector<HKGenerator> hk_generators(const FiniteGroup& g, const Filtration& filtration, int dim) {
  std::vector<HKGenerator> out;
  for (int i = 0; i <= dim; ++i) {
    const auto gens = generating_set(g, filtration.level(i));
    if (gens.empty()) continue;
    // faces with all fixed coordinates equal to 1; the other faces of the
    // same codimension are products of these (inclusion-exclusion)
    for (const auto& f : enumerate_faces(dim, i)) {
      if (f.value() != f.mask()) continue;
      for (Element a : gens) out.push_back({f, a, i});
    }
  }
  return out;
}

}  // namespace

bool HKCubeGroup::contains(const Configuration& c) const {
  if (c.dim != dim) return false;
  for (PointId p : c.values)
    if (p >= group.order()) return false;
  return std::binary_search(elements.begin(), elements.end(), codec().encode(c));
}

HKCubeGroup hk_cube_group(const FiniteGroup& g, const Filtration& filtration, int dim) {
  if (dim < 0 || dim > kMaxCubeDim) throw InputError("constructions.BadDimension", "cube dimension out of range");
  HKCubeGroup hk{g, filtration, dim, {}, hk_generators(g, filtration, dim)};
  std::vector<FacePermutation> perms;
  for (const auto& gen : hk.generators) perms.push_back({gen.face, left_mult(g, gen.g)});
  const ConfigCodec codec(g.order(), dim);
  const CubeCode identity = codec.encode(constant_pattern(dim, g.identity()));
  hk.elements = face_orbit(g.order(), dim, {identity}, perms);
  return hk;
}

std::vector<std::uint32_t> gamma_levels(const Filtration& filtration, const Subgroup& gamma) {
  std::vector<std::uint32_t> out;
  for (const auto& level : filtration.levels()) {
    std::uint32_t k = 0;
    for (Element a : level.elements()) k += gamma.contains(a) ? 1 : 0;
    out.push_back(k);
  }
  return out;
}

FiniteCubespace hk_nilspace(const FiniteGroup& g, const Filtration& filtration, const Subgroup& gamma, int lmax) {
  const GroupAction act = coset_action(g, gamma);
  const PointId n = act.points();
  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= lmax; ++l) {
    std::vector<FacePermutation> perms;
    for (const auto& gen : hk_generators(g, filtration, l)) perms.push_back({gen.face, act.permutation(gen.g)});
    const ConfigCodec codec(n, l);
    std::vector<CubeCode> seeds;
    for (PointId x = 0; x < n; ++x) seeds.push_back(codec.encode(constant_pattern(l, x)));
    cubes.push_back(face_orbit(n, l, seeds, perms));
  }
  return FiniteCubespace(n, std::move(cubes));
}

Filtration abelian_filtration(const FiniteGroup& a, int s) {
  if (s < 0) throw InputError("constructions.BadDegree", "degree must be non-negative");
  std::vector<Subgroup> levels(s + 1, whole_group(a));
  levels.push_back(trivial_subgroup(a));
  return Filtration(std::move(levels), s >= 1 || a.order() == 1);
}

FiniteCubespace standard_nilspace(const FiniteAbelianGroup& a, int s, int lmax) {
  if (s < 0) throw InputError("constructions.BadDegree", "degree must be non-negative");
  const FiniteGroup& grp = a.group();
  const PointId n = grp.order();
  const int bound = 1 << (s + 1);  // |coefficient| <= 2^{s+1}
  // times[k + bound][x] = k x
  std::vector<std::vector<Element>> times(2 * bound + 1, std::vector<Element>(n));
  for (int k = -bound; k <= bound; ++k)
    for (Element x = 0; x < n; ++x) times[k + bound][x] = a.times(x, k);

  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= lmax; ++l) {
    const VertexIndex vcount = vertex_count(l);
    // distinct nonzero linear forms sum_v coef[v] c(v), sign-normalised
    std::set<std::vector<int>> forms;
    for (const auto& phi : enumerate_morphisms(s + 1, l)) {
      std::vector<int> coef(vcount, 0);
      const auto table = phi.vertex_table();
      for (VertexIndex w = 0; w < table.size(); ++w) coef[table[w]] += vertex_sign(w);
      auto first = std::find_if(coef.begin(), coef.end(), [](int c) { return c != 0; });
      if (first == coef.end()) continue;
      if (*first < 0)
        for (int& c : coef) c = -c;
      forms.insert(std::move(coef));
    }
    // forms grouped by their last nonzero vertex, stored sparsely
    struct Term {
      VertexIndex v;
      int coef;
    };
    std::vector<std::vector<std::vector<Term>>> at(vcount);
    for (const auto& f : forms) {
      std::vector<Term> terms;
      for (VertexIndex v = 0; v < vcount; ++v)
        if (f[v] != 0) terms.push_back({v, f[v]});
      at[terms.back().v].push_back(std::move(terms));
    }

    const ConfigCodec codec(n, l);
    std::vector<CubeCode> found;
    std::vector<Element> c(vcount, 0);
    std::vector<Element> partial;
    std::function<void(VertexIndex, CubeCode)> fill = [&](VertexIndex v, CubeCode code) {
      if (v == vcount) {
        found.push_back(code);
        if ((found.size() & 0xFFFF) == 0) check_guard("standard_nilspace", found.size());
        return;
      }
      const auto& fs = at[v];
      std::vector<Element> rest(fs.size(), a.zero());
      for (std::size_t k = 0; k < fs.size(); ++k)
        for (std::size_t t = 0; t + 1 < fs[k].size(); ++t)
          rest[k] = a.add(rest[k], times[fs[k][t].coef + bound][c[fs[k][t].v]]);
      for (Element d = 0; d < n; ++d) {
        bool ok = true;
        for (std::size_t k = 0; k < fs.size() && ok; ++k)
          ok = a.add(rest[k], times[fs[k].back().coef + bound][d]) == a.zero();
        if (!ok) continue;
        c[v] = d;
        fill(v + 1, code + static_cast<CubeCode>(d) * codec.weight(v));
      }
    };
    fill(0, 0);
    check_guard("standard_nilspace", found.size());
    cubes.push_back(std::move(found));
  }
  return FiniteCubespace(n, std::move(cubes));
}

FiniteCubespace dynamical_cubespace(const GroupAction& act, int lmax) {
  const PointId n = act.points();
  const auto gens = generating_set(act.group(), whole_group(act.group()));
  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= lmax; ++l) {
    std::vector<FacePermutation> perms;
    if (l >= 1)
      for (const auto& f : enumerate_faces(l, 1))
        for (Element h : gens)
          perms.push_back({f, act.permutation(h)});
    const ConfigCodec codec(n, l);
    std::vector<CubeCode> seeds;
    for (PointId x = 0; x < n; ++x) seeds.push_back(codec.encode(constant_pattern(l, x)));
    cubes.push_back(face_orbit(n, l, seeds, perms));
  }
  return FiniteCubespace(n, std::move(cubes));
}

RpRelation rp_relation(const GroupAction& act, int s, const FiniteCubespace* cubes) {
  if (s < 0) throw InputError("constructions.BadDegree", "degree must be non-negative");
  std::optional<FiniteCubespace> built;
  if (!cubes || cubes->lmax() < s + 1) {
    built = dynamical_cubespace(act, s + 1);
    cubes = &*built;
  }
  if (cubes->points() != act.points())
    throw InputError("constructions.BadCubespace", "cubespace and action disagree on the point count");
  const PointId n = act.points();
  RpRelation out;
  out.s = s;
  out.pairs = PairRelation(n);
  const CubeSet& set = cubes->cubes(s + 1);
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (set.contains(set.codec().encode(corner_pattern(s + 1, x, y)))) out.pairs.set(x, y);
  out.equivalence = check_equivalence(out.pairs);
  out.equivalence.level = s;
  out.invariance = Verdict::pass("h-invariance", s, 0);
  for (Element h = 0; h < act.group().order() && out.invariance.passed; ++h)
    for (PointId x = 0; x < n && out.invariance.passed; ++x)
      for (PointId y = 0; y < n; ++y) {
        ++out.invariance.examined;
        if (out.pairs.holds(x, y) && !out.pairs.holds(act.act(h, x), act.act(h, y))) {
          Witness w;
          w.ints = {h, x, y};
          out.invariance = Verdict::fail("h-invariance", s, "(x,y) related but (hx,hy) not", std::move(w));
          break;
        }
      }
  if (out.equivalence.passed) out.relation = equivalence_closure(out.pairs);
  return out;
}

}  // namespace nilkit
