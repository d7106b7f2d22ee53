#include "nilkit/dynamics.hpp"

#include <algorithm>

#include "nilkit/error.hpp"
#include "nilkit/factors.hpp"

namespace nilkit {

DynamicalSystem::DynamicalSystem(GroupAction action, int lmax) : action_(std::move(action)), lmax_(lmax) {
  if (lmax < 0) throw InputError("dynamics.BadLevel", "lmax must be non-negative");
}

const SpacePtr& DynamicalSystem::cubes() const {
  if (!cubes_) cubes_ = share(dynamical_cubespace(action_, lmax_));
  return cubes_;
}

GroupAction restrict_action(const GroupAction& act, const std::vector<PointId>& orbit) {
  std::vector<PointId> index(act.points(), UINT32_MAX);
  for (PointId k = 0; k < orbit.size(); ++k) index[orbit[k]] = k;
  const auto m = static_cast<PointId>(orbit.size());
  std::vector<PointId> table(static_cast<std::size_t>(act.group().order()) * m);
  for (Element h = 0; h < act.group().order(); ++h)
    for (PointId k = 0; k < m; ++k) {
      const PointId y = index[act.act(h, orbit[k])];
      if (y == UINT32_MAX) throw InputError("dynamics.NotInvariant", "the point set is not invariant");
      table[static_cast<std::size_t>(h) * m + k] = y;
    }
  return GroupAction(act.group(), m, std::move(table));
}

namespace {

Verdict all_translations(const GroupAction& act, const FiniteCubespace& q) {
  const int up_to = q.lmax();
  if (up_to < 1) return Verdict::pass("translations", 1, 0);
  for (Element h = 0; h < act.group().order(); ++h) {
    auto v = is_translation(q, act.permutation(h), 1, up_to);
    if (!v.passed) {
      v.witness->ints = {h};
      return v;
    }
  }
  return Verdict::pass("translations", 1, act.group().order());
}

}  // namespace

RpQuotient rp_quotient(const DynamicalSystem& sys, int s) {
  if (!sys.minimal()) throw InputError("dynamics.NotMinimal", "the action is not transitive");
  if (s < 0 || s + 1 > sys.lmax()) throw InputError("dynamics.BadLevel", "need s+1 <= lmax");
  const auto& act = sys.action();
  RpQuotient out;
  out.rp = rp_relation(act, s, sys.cubes().get());
  if (!out.rp.relation) throw InputError("dynamics.NotEquivalence", out.rp.equivalence.detail);
  auto q = quotient_cubespace(*sys.cubes(), *out.rp.relation);
  out.space = share(std::move(q.space));
  out.map = CubespaceMap(sys.cubes(), out.space, std::move(q.projection));

  const PointId m = out.space->points();
  std::vector<PointId> table(static_cast<std::size_t>(act.group().order()) * m);
  for (Element h = 0; h < act.group().order(); ++h)
    for (PointId x = 0; x < act.points(); ++x) table[static_cast<std::size_t>(h) * m + out.map(x)] = out.map(act.act(h, x));
  out.induced = GroupAction(act.group(), m, std::move(table));

  out.certificate = nilspace_degree(*out.space);
  if (out.certificate.is_nilspace && *out.certificate.degree <= s)
    out.degree = Verdict::pass("degree", s, 1);
  else
    out.degree = Verdict::fail("degree", s,
                               out.certificate.is_nilspace ? "degree exceeds s" : out.certificate.reason, Witness{});
  out.ergodic = check_ergodic(*out.space, 1);
  out.translations = all_translations(out.induced, *out.space);
  return out;
}

std::vector<ComponentQuotient> rp_quotient_components(const DynamicalSystem& sys, int s) {
  std::vector<ComponentQuotient> out;
  const EquivRelation orbits = sys.action().orbits();
  for (const auto& orbit : orbits.classes()) {
    DynamicalSystem part(restrict_action(sys.action(), orbit), sys.lmax());
    out.push_back({orbit, rp_quotient(part, s)});
  }
  return out;
}

GroupAction descend_action(const GroupAction& act, const CubespaceMap& phi) {
  if (act.points() != phi.source->points()) throw InputError("dynamics.BadMap", "action and map disagree on points");
  const FiniteGroup& h = act.group();
  auto translation = [&](Element e) {
    auto t = make_translation(phi.source, act.permutation(e), 1);
    if (!t.status.passed())
      throw InputError("dynamics.NotTranslation", "element " + std::to_string(e) + " is not a 1-translation");
    return t;
  };
  auto push = [&](Element e) {
    try {
      return push_translation(phi, translation(e));
    } catch (const DescentError& err) {
      std::vector<std::int64_t> w{e};
      w.insert(w.end(), err.witness().begin(), err.witness().end());
      throw DescentError("dynamics.NoDescent", err.what(), std::move(w));
    }
  };
  // generators first: a failure there is the most informative witness
  for (Element g : generating_set(h, whole_group(h))) push(g);
  const PointId m = phi.target->points();
  std::vector<PointId> table(static_cast<std::size_t>(h.order()) * m);
  for (Element e = 0; e < h.order(); ++e) {
    auto t = push(e);
    if (!t.status.passed())
      throw DescentError("dynamics.NoDescent", "the descended map is not a 1-translation", {e});
    std::copy(t.perm.begin(), t.perm.end(), table.begin() + static_cast<std::ptrdiff_t>(e) * m);
  }
  // compatibility is checked by the GroupAction constructor
  return GroupAction(h, m, std::move(table));
}

MaximalityReport maximality_check(const DynamicalSystem& sys, int s, const GroupAction& z,
                                  const std::vector<PointId>& psi) {
  const auto& act = sys.action();
  if (psi.size() != act.points()) throw InputError("dynamics.BadMap", "one image per point expected");
  if (!(z.group() == act.group())) throw InputError("dynamics.NotEquivariant", "different acting groups");
  MaximalityReport out;
  for (Element h = 0; h < act.group().order(); ++h)
    for (PointId x = 0; x < act.points(); ++x)
      if (psi[act.act(h, x)] != z.act(h, psi[x]))
        throw InputError("dynamics.NotEquivariant",
                         "psi(h x) != h psi(x) at h = " + std::to_string(h) + ", x = " + std::to_string(x));
  std::vector<bool> hit(z.points(), false);
  for (PointId y : psi) hit.at(y) = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw InputError("dynamics.NotEquivariant", "psi is not onto");
  out.equivariant = Verdict::pass("equivariant", 0, act.points());

  DynamicalSystem target(z, s + 1);
  auto rz = rp_relation(z, s, target.cubes().get());
  out.candidate = rz.relation && rz.relation->is_diagonal()
                      ? Verdict::pass("candidate", s, z.points())
                      : Verdict::fail("candidate", s, "RP^s of the candidate is not trivial", Witness{});

  CubespaceMap f(sys.cubes(), target.cubes(), psi);
  out.morphism = check_morphism(f);

  auto rx = rp_relation(act, s, sys.cubes().get());
  out.refines = Verdict::pass("refines", s, 0);
  out.equal = true;
  for (PointId a = 0; a < act.points(); ++a)
    for (PointId b = 0; b < act.points(); ++b) {
      const bool in_rp = rx.pairs.holds(a, b);
      const bool in_ker = psi[a] == psi[b];
      if (in_rp != in_ker) out.equal = false;
      if (in_rp && !in_ker && out.refines.passed) {
        Witness w;
        w.ints = {a, b};
        out.refines = Verdict::fail("refines", s, "an RP^s pair is separated by psi", std::move(w));
      }
    }
  return out;
}

}  // namespace nilkit
