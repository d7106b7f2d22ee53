#include "nilkit/fibrations.hpp"

#include <algorithm>

#include "nilkit/error.hpp"

namespace nilkit {

TopStructure TopStructure::of(const SpacePtr& x, int s) {
  if (s < 1 || s > x->lmax()) throw InputError("fibrations.BadDegree", "degree must lie in 1..lmax");
  TopStructure t;
  t.space = x;
  t.s = s;
  t.relation = canonical_relation(*x, s - 1);
  auto q = quotient_cubespace(*x, t.relation);
  t.base = share(std::move(q.space));
  t.pi = std::move(q.projection);
  return t;
}

int require_degree(const FiniteCubespace& x) {
  auto cert = nilspace_degree(x);
  if (!cert.is_nilspace) throw InputError("fibrations.NotNilspace", cert.reason);
  return *cert.degree;
}

Shadow shadow(const CubespaceMap& f, int s) {
  Shadow out{TopStructure::of(f.source, s), TopStructure::of(f.target, s), {}};
  const auto& px = out.source;
  const auto& py = out.target;
  std::vector<PointId> psi(px.base->points(), UINT32_MAX);
  for (PointId x = 0; x < f.source->points(); ++x) {
    const PointId image = py.pi[f(x)];
    auto& slot = psi[px.pi[x]];
    if (slot != UINT32_MAX && slot != image)
      throw InputError("fibrations.NoShadow", "pi o f is not constant on the pi-fibre of point " + std::to_string(x));
    slot = image;
  }
  out.psi = CubespaceMap(px.base, py.base, std::move(psi));
  check_morphism(out.psi);
  check_fibration(out.psi, std::min(px.base->lmax(), py.base->lmax()));
  return out;
}

const char* to_string(FibrationKind k) {
  switch (k) {
    case FibrationKind::Horizontal: return "horizontal";
    case FibrationKind::Vertical: return "vertical";
    case FibrationKind::Both: return "both";
    case FibrationKind::Neither: return "neither";
  }
  return "?";
}

namespace {

Verdict pair_fail(const char* name, int s, const std::string& why, std::int64_t a, std::int64_t b) {
  Witness w;
  w.ints = {a, b};
  return Verdict::fail(name, s, why, std::move(w));
}

bool corner_cube(const FiniteCubespace& x, int s, PointId a, PointId b) {
  return x.contains(corner_pattern(s, a, b));
}

void ensure_fibration(CubespaceMap& f) {
  if (f.fibration.status == Status::Unverified)
    check_fibration(f, std::min(f.source->lmax(), f.target->lmax()));
  if (!f.fibration.passed()) throw InputError("fibrations.NotFibration", "the map is not a fibration");
}

bool is_isomorphism(CubespaceMap& g) {
  if (!g.injective() || !g.surjective()) return false;
  for (int l = 0; l <= std::min(g.source->lmax(), g.target->lmax()); ++l)
    if (g.source->cubes(l).size() != g.target->cubes(l).size()) return false;
  // a bijective morphism with equally many cubes maps cubes onto cubes
  return check_morphism(g).passed;
}

}  // namespace

Classification classify(CubespaceMap& f, int s) {
  ensure_fibration(f);
  const FiniteCubespace& x = *f.source;
  const PointId n = x.points();
  const Shadow sh = shadow(f, s);
  const auto& px = sh.source;
  const auto& py = sh.target;

  Classification c;
  c.s = s;
  c.horizontal1 = Verdict::pass("horizontal-1", s, 0);
  c.horizontal5 = Verdict::pass("horizontal-5", s, 0);
  c.vertical1 = Verdict::pass("vertical-1", s, 0);
  c.vertical5 = Verdict::pass("vertical-5", s, 0);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b) {
      if (a == b) continue;
      const bool same_image = f(a) == f(b);
      if (c.horizontal1.passed && px.same_fibre(a, b) && same_image)
        c.horizontal1 = pair_fail("horizontal-1", s, "two points of a pi-fibre have the same image", a, b);
      if (c.horizontal5.passed && same_image && corner_cube(x, s, a, b))
        c.horizontal5 = pair_fail("horizontal-5", s, "f(x1) = f(x2) and corner(x1;x2) is a cube", a, b);
      if (c.vertical1.passed && py.same_fibre(f(a), f(b)) && !px.same_fibre(a, b))
        c.vertical1 = pair_fail("vertical-1", s, "images share a pi-fibre but the points do not", a, b);
      if (c.vertical5.passed && same_image && !corner_cube(x, s, a, b))
        c.vertical5 = pair_fail("vertical-5", s, "f(x1) = f(x2) but corner(x1;x2) is not a cube", a, b);
    }

  // (2) for horizontal: restriction to each pi-fibre is a bijection onto the pi-fibre of the image
  c.horizontal2 = Verdict::pass("horizontal-2", s, n);
  for (PointId a = 0; a < n && c.horizontal2.passed; ++a) {
    const auto& fibre = px.relation.members(px.relation.class_of(a));
    const auto& target = py.relation.members(py.relation.class_of(f(a)));
    std::vector<PointId> image;
    for (PointId p : fibre) image.push_back(f(p));
    std::sort(image.begin(), image.end());
    const bool unique = std::adjacent_find(image.begin(), image.end()) == image.end();
    if (!unique || image != target)
      c.horizontal2 = pair_fail("horizontal-2", s, "f is not a bijection between the pi-fibres", a, f(a));
  }

  CubespaceMap psi = sh.psi;
  c.vertical2 = is_isomorphism(psi) ? Verdict::pass("vertical-2", s, psi.map.size())
                                    : Verdict::fail("vertical-2", s, "the shadow is not an isomorphism", Witness{});

  const bool h = c.horizontal1.passed;
  const bool v = c.vertical1.passed;
  c.kind = h && v ? FibrationKind::Both : h ? FibrationKind::Horizontal : v ? FibrationKind::Vertical
                                                                           : FibrationKind::Neither;
  c.consistent = (h == c.horizontal2.passed) && (h == c.horizontal5.passed) && (v == c.vertical2.passed) &&
                 (v == c.vertical5.passed);
  f.horizontal.record(c.horizontal1);
  f.vertical.record(c.vertical1);
  return c;
}

Decomposition decompose(CubespaceMap& f, int s) {
  ensure_fibration(f);
  const FiniteCubespace& x = *f.source;
  const PointId n = x.points();
  Decomposition d;
  PairRelation r(n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b)
      if (f(a) == f(b) && corner_cube(x, s, a, b)) r.set(a, b);
  d.equivalence = check_equivalence(r);
  if (!d.equivalence.passed)
    throw InputError("fibrations.NotEquivalence", "the relative relation is not an equivalence: " + d.equivalence.detail);
  d.relation = equivalence_closure(r);
  auto q = quotient_cubespace(x, d.relation);
  d.middle = share(std::move(q.space));
  d.vertical = CubespaceMap(f.source, d.middle, std::move(q.projection));
  std::vector<PointId> h(d.middle->points());
  for (std::uint32_t k = 0; k < d.relation.class_count(); ++k) h[k] = f(d.relation.members(k).front());
  d.horizontal = CubespaceMap(d.middle, f.target, std::move(h));
  d.composes = compose(d.horizontal, d.vertical).map == f.map;
  check_morphism(d.vertical);
  check_morphism(d.horizontal);
  check_fibration(d.vertical, std::min(d.vertical.source->lmax(), d.vertical.target->lmax()));
  check_fibration(d.horizontal, std::min(d.horizontal.source->lmax(), d.horizontal.target->lmax()));
  d.vertical_class = classify(d.vertical, s);
  d.horizontal_class = classify(d.horizontal, s);
  return d;
}

CubespaceMap universal_factor(const CubespaceMap& f_yx, const CubespaceMap& f_zx) {
  if (f_yx.source->points() != f_zx.source->points())
    throw InputError("fibrations.BadMap", "the two maps have different sources");
  std::vector<PointId> g(f_yx.target->points(), UINT32_MAX);
  for (PointId x = 0; x < f_yx.map.size(); ++x) {
    auto& slot = g[f_yx(x)];
    if (slot != UINT32_MAX && slot != f_zx(x))
      throw InputError("fibrations.NoRefinement",
                       "fibre over " + std::to_string(f_yx(x)) + " meets two fibres of the second map");
    slot = f_zx(x);
  }
  for (PointId y = 0; y < g.size(); ++y)
    if (g[y] == UINT32_MAX)
      throw InputError("fibrations.NoRefinement", "point " + std::to_string(y) + " has an empty fibre");
  CubespaceMap out(f_yx.target, f_zx.target, std::move(g));
  check_morphism(out);
  check_fibration(out, std::min(out.source->lmax(), out.target->lmax()));
  return out;
}

}  // namespace nilkit
