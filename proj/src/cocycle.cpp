#include "nilkit/cocycle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <absl/container/flat_hash_map.h>

#include "nilkit/error.hpp"

namespace nilkit {

GroupValuedFunction::GroupValuedFunction(SpacePtr d, FiniteAbelianGroup g, std::vector<Element> v)
    : domain(std::move(d)), group(std::move(g)), values(std::move(v)) {
  if (values.size() != domain->points()) throw InputError("cocycle.BadFunction", "one value per point expected");
  for (Element a : values)
    if (a >= group.order()) throw InputError("cocycle.BadFunction", "value outside the group");
}

Cocycle::Cocycle(int l, SpacePtr d, FiniteAbelianGroup g, std::vector<Element> v)
    : level(l), domain(std::move(d)), group(std::move(g)), values(std::move(v)) {
  if (l < 0 || l > domain->lmax()) throw InputError("cocycle.BadCocycle", "level outside 0..lmax");
  if (values.size() != domain->cubes(l).size()) throw InputError("cocycle.BadCocycle", "one value per cube expected");
  for (Element a : values)
    if (a >= group.order()) throw InputError("cocycle.BadCocycle", "value outside the group");
}

Element Cocycle::at_code(CubeCode code) const {
  const auto& codes = domain->cubes(level).codes();
  auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) throw InputError("cocycle.NotACube", "configuration is not a cube");
  return values[it - codes.begin()];
}

Element Cocycle::operator()(const Configuration& c) const {
  if (c.dim != level) throw InputError("cocycle.NotACube", "wrong dimension");
  return at_code(domain->cubes(level).codec().encode(c));
}

Cocycle zero_cocycle(SpacePtr x, const FiniteAbelianGroup& a, int l) {
  const std::size_t n = x->cubes(l).size();
  return Cocycle(l, std::move(x), a, std::vector<Element>(n, a.zero()));
}

Cocycle derivative(const GroupValuedFunction& f, int l) {
  const auto& set = f.domain->cubes(l);
  const auto& a = f.group;
  std::vector<Element> out(set.size());
  std::vector<PointId> buf(vertex_count(l));
  for (std::size_t i = 0; i < set.size(); ++i) {
    set.codec().decode(set[i], buf);
    Element s = a.zero();
    for (VertexIndex w = 0; w < buf.size(); ++w)
      s = vertex_sign(w) > 0 ? a.add(s, f(buf[w])) : a.sub(s, f(buf[w]));
    out[i] = s;
  }
  Cocycle rho(l, f.domain, a, std::move(out));
  is_cocycle(rho);
  return rho;
}

namespace {

VertexIndex swap_bits(VertexIndex w, int i, int j) {
  const VertexIndex bi = (w >> i) & 1U, bj = (w >> j) & 1U;
  if (bi == bj) return w;
  return w ^ ((VertexIndex{1} << i) | (VertexIndex{1} << j));
}

}  // namespace

Verdict is_cocycle(Cocycle& rho) {
  const int l = rho.level;
  const auto& set = rho.domain->cubes(l);
  const auto& a = rho.group;
  const auto& codes = set.codes();
  if (l == 0) {
    auto v = Verdict::pass("cocycle", 0, set.size());
    rho.verified.record(v);
    return v;
  }
  const auto& codec = set.codec();
  const VertexIndex half = vertex_count(l - 1);
  const std::uint64_t width = codec.weight(half - 1);
  std::uint64_t examined = 0;
  std::vector<PointId> buf(vertex_count(l)), perm(vertex_count(l));

  auto index_of = [&](CubeCode code, std::size_t lo, std::size_t hi) -> std::optional<std::size_t> {
    auto it = std::lower_bound(codes.begin() + lo, codes.begin() + hi, code);
    if (it == codes.begin() + hi || *it != code) return std::nullopt;
    return static_cast<std::size_t>(it - codes.begin());
  };
  auto original = [&](CubeCode code, int axis) {
    codec.decode(code, buf);
    for (VertexIndex w = 0; w < buf.size(); ++w) perm[swap_bits(w, axis - 1, l - 1)] = buf[w];
    return Configuration(l, perm);
  };
  auto fail = [&](const std::string& why, std::vector<CubeCode> cubes, int axis) {
    Witness w;
    for (CubeCode c : cubes) w.configs.push_back(original(c, axis));
    w.ints = {axis};
    auto v = Verdict::fail("cocycle", l, why, std::move(w));
    rho.verified.record(v);
    return v;
  };

  // When c ~ c' iff [c,c'] is a cube is an equivalence, additivity says
  // rho([c,c']) = P(c') - P(c) with P(c) = rho([root,c]), root the least
  // element of the class. Runs of codes sharing c are the neighbour sets.
  // The cube set is invariant, so this is the same for every axis.
  absl::flat_hash_map<CubeCode, std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0, j; i < codes.size(); i = j) {
    for (j = i + 1; j < codes.size() && codes[j] / width == codes[i] / width;) ++j;
    runs[codes[i] / width] = {i, j};
  }
  bool equivalence = true;
  std::vector<std::pair<std::size_t, std::size_t>> through_root(codes.size());
  absl::flat_hash_map<CubeCode, std::size_t> root_edge;  // c -> index of [root,c]
  for (std::size_t i = 0; i < codes.size() && equivalence; ++i) {
    const CubeCode c1 = codes[i] / width, c2 = codes[i] % width;
    const auto [lo1, hi1] = runs.at(c1);
    auto it = runs.find(c2);
    equivalence = it != runs.end() && it->second.second - it->second.first == hi1 - lo1 &&
                  codes[it->second.first] % width == codes[lo1] % width &&
                  index_of(c1 * width + c1, lo1, hi1) && index_of(c2 * width + c1, it->second.first, it->second.second);
  }
  for (std::size_t i = 0; i < codes.size() && equivalence; ++i) {
    auto edge = [&](CubeCode c) {
      auto [it, fresh] = root_edge.try_emplace(c, 0);
      if (fresh) {
        const CubeCode root = codes[runs.at(c).first] % width;
        const auto [lo, hi] = runs.at(root);
        it->second = *index_of(root * width + c, lo, hi);
      }
      return it->second;
    };
    through_root[i] = {edge(codes[i] / width), edge(codes[i] % width)};
  }

  for (int axis = 1; axis <= l; ++axis) {
    // rho in coordinates where `axis` is the last one
    std::vector<Element> r(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) {
      codec.decode(codes[i], buf);
      for (VertexIndex w = 0; w < buf.size(); ++w) perm[swap_bits(w, axis - 1, l - 1)] = buf[w];
      r[*index_of(codec.encode(perm), 0, codes.size())] = rho.values[i];
    }
    if (equivalence) {
      for (std::size_t i = 0; i < codes.size(); ++i) {
        ++examined;
        const auto [k1, k2] = through_root[i];
        if (r[i] != a.sub(r[k2], r[k1]))
          return fail("rho([c1,c3]) = rho([c1,c2]) + rho([c2,c3]) fails", {codes[k1], codes[i], codes[k2]}, axis);
      }
      continue;
    }
    for (std::size_t i = 0; i < codes.size(); ++i) {
      const CubeCode c1 = codes[i] / width, c2 = codes[i] % width;
      if (c1 == c2 && r[i] != a.zero()) return fail("rho vanishes on [c,c] fails", {codes[i]}, axis);
      if (auto j = index_of(c2 * width + c1, 0, codes.size()); j && r[*j] != a.neg(r[i]))
        return fail("rho([c1,c0]) = -rho([c0,c1]) fails", {codes[i], codes[*j]}, axis);
      auto [lo1, hi1] = set.range(c1 * width, c1 * width + width - 1);
      auto [lo2, hi2] = set.range(c2 * width, c2 * width + width - 1);
      for (std::size_t j = lo2; j < hi2; ++j) {
        ++examined;
        const CubeCode c3 = codes[j] % width;
        auto k = index_of(c1 * width + c3, lo1, hi1);
        if (!k) continue;  // [c1,c3] is not a cube
        if (r[*k] != a.add(r[i], r[j]))
          return fail("rho([c1,c3]) = rho([c1,c2]) + rho([c2,c3]) fails", {codes[i], codes[j], codes[*k]}, axis);
      }
    }
  }
  auto v = Verdict::pass("cocycle", l, examined);
  rho.verified.record(v);
  return v;
}

NilspaceTop nilspace_top(const SpacePtr& x, int s) {
  if (s < 1 || s + 1 > x->lmax()) throw InputError("cocycle.BadDegree", "need 1 <= s and s+1 <= lmax");
  NilspaceTop t;
  t.space = x;
  t.s = s;
  t.group = structure_group(*x, s);
  t.top = TopStructure::of(x, s);
  return t;
}

Configuration shift(const NilspaceTop& t, const std::vector<Element>& f, const Configuration& c) {
  if (f.size() != c.values.size()) throw InputError("cocycle.BadShift", "one group element per vertex expected");
  Configuration out = c;
  for (VertexIndex w = 0; w < f.size(); ++w) out[w] = t.group.act(f[w], c[w]);
  return out;
}

Element discrepancy(const NilspaceTop& t, const Configuration& c) {
  if (c.dim != t.s + 1) throw InputError("cocycle.BadDimension", "discrepancy needs an (s+1)-configuration");
  Configuration image = c;
  for (auto& v : image.values) v = t.top.pi[v];
  if (!t.top.base->contains(image)) throw InputError("cocycle.BaseNotCube", "pi(c) is not a cube");
  Configuration probe = c;
  for (Element a = 0; a < t.group.group.order(); ++a) {
    probe[0] = t.group.act(a, c[0]);
    if (t.space->contains(probe)) return a;
  }
  throw StructureError("factors.NotGroup", "no element of A completes the configuration", {});
}

FunctionalSolution solve_functional(CubespaceMap& phi, Cocycle& rho) {
  if (rho.domain != phi.source && !(*rho.domain == *phi.source))
    throw InputError("cocycle.BadDomain", "rho is not defined on the source of phi");
  if (rho.verified.status == Status::Unverified) is_cocycle(rho);
  if (!rho.verified.passed()) throw InputError("cocycle.NotCocycle", rho.verified.verdict->detail);
  if (phi.fibration.status == Status::Unverified)
    check_fibration(phi, std::min(phi.source->lmax(), phi.target->lmax()));
  if (!phi.fibration.passed()) throw InputError("fibrations.NotFibration", "phi is not a fibration");
  const int l = rho.level;
  if (l > phi.target->lmax()) throw InputError("cocycle.BadDegree", "target has no cubes of this dimension");

  const FiniteCubespace& x = *phi.source;
  const auto& xs = x.cubes(l);
  const auto& ys = phi.target->cubes(l);
  const auto& ycodes = ys.codes();
  const std::uint32_t nx = x.points();
  const auto vars = static_cast<std::uint32_t>(nx + ys.size());
  std::vector<LinearRow> rows(xs.size());
  std::vector<PointId> buf(vertex_count(l));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs.codec().decode(xs[i], buf);
    std::map<std::uint32_t, std::int64_t> coef;
    for (VertexIndex w = 0; w < buf.size(); ++w) coef[buf[w]] += vertex_sign(w);
    for (auto& v : buf) v = phi(v);
    auto it = std::lower_bound(ycodes.begin(), ycodes.end(), ys.codec().encode(buf));
    if (it == ycodes.end() || *it != ys.codec().encode(buf))
      throw InputError("fibrations.NotMorphism", "phi maps a cube outside C^l(Y)");
    coef[nx + static_cast<std::uint32_t>(it - ycodes.begin())] += 1;
    for (auto [j, c] : coef)
      if (c) rows[i].emplace_back(j, c);
  }

  FunctionalSolution out;
  out.raw = solve_over(rho.group, vars, rows, rho.values);
  out.feasible = out.raw.feasible;
  if (!out.feasible) return out;
  out.f = GroupValuedFunction(phi.source, rho.group, {out.raw.x.begin(), out.raw.x.begin() + nx});
  out.rho_tilde = Cocycle(l, phi.target, rho.group, {out.raw.x.begin() + nx, out.raw.x.end()});
  out.rho_tilde_cocycle = is_cocycle(*out.rho_tilde);

  auto df = derivative(out.f, l);
  out.round_trip = true;
  for (std::size_t i = 0; i < xs.size() && out.round_trip; ++i) {
    xs.codec().decode(xs[i], buf);
    for (auto& v : buf) v = phi(v);
    out.round_trip = rho.group.add(df.values[i], (*out.rho_tilde)(Configuration(l, buf))) == rho.values[i];
  }
  return out;
}

std::vector<std::vector<Element>> functional_solutions(const FunctionalSolution& sol) {
  std::set<std::vector<Element>> fs;
  for (auto& x : enumerate_solutions(sol.f.group, sol.raw))
    fs.insert(std::vector<Element>(x.begin(), x.begin() + sol.f.values.size()));
  return {fs.begin(), fs.end()};
}

Section least_section(const NilspaceTop& t) {
  Section s;
  s.value.resize(t.base_points());
  for (PointId x = t.space->points(); x-- > 0;) s.value[t.top.pi[x]] = x;
  return s;
}

namespace {

void require_psi(const NilspaceTop& t, const CubespaceMap& psi) {
  if (psi.source->points() != t.base_points() || !(*psi.source == *t.top.base))
    throw InputError("cocycle.BadShadow", "psi must be defined on pi(X)");
}

// U is a union of psi-fibres
bool saturated(const CubespaceMap& psi, const Section& s) {
  std::vector<int> state(psi.target->points(), -1);
  for (PointId b = 0; b < s.value.size(); ++b) {
    const int d = s.defined(b) ? 1 : 0;
    int& st = state[psi(b)];
    if (st != -1 && st != d) return false;
    st = d;
  }
  return true;
}

}  // namespace

Verdict check_straight(const NilspaceTop& t, const CubespaceMap& psi, Section& sigma) {
  require_psi(t, psi);
  const int l = t.s + 1;
  auto done = [&](Verdict v) {
    sigma.straight.record(v);
    return v;
  };
  if (sigma.value.size() != t.base_points()) throw InputError("cocycle.BadSection", "section has the wrong size");
  for (PointId b = 0; b < sigma.value.size(); ++b)
    if (sigma.defined(b) && t.top.pi[sigma.value[b]] != b) {
      Witness w;
      w.ints = {b, sigma.value[b]};
      return done(Verdict::fail("straight", l, "pi(sigma(b)) != b", std::move(w)));
    }
  if (!saturated(psi, sigma))
    return done(Verdict::fail("straight", l, "domain is not a union of psi-fibres", Witness{}));

  const auto& bs = t.top.base->cubes(l);
  const auto& codec2 = psi.target->cubes(l).codec();
  std::map<CubeCode, std::pair<Element, CubeCode>> seen;
  std::vector<PointId> buf(vertex_count(l)), img(vertex_count(l));
  std::uint64_t examined = 0;
  for (CubeCode code : bs.codes()) {
    bs.codec().decode(code, buf);
    if (!std::all_of(buf.begin(), buf.end(), [&](PointId b) { return sigma.defined(b); })) continue;
    ++examined;
    for (VertexIndex w = 0; w < buf.size(); ++w) img[w] = psi(buf[w]);
    Configuration lifted(l, buf);
    for (auto& v : lifted.values) v = sigma.value[v];
    const Element d = discrepancy(t, lifted);
    auto [it, fresh] = seen.emplace(codec2.encode(img), std::make_pair(d, code));
    if (!fresh && it->second.first != d) {
      Witness w;
      w.configs = {bs.codec().decode(it->second.second), Configuration(l, buf)};
      w.ints = {it->second.first, d};
      return done(Verdict::fail("straight", l, "psi-equal cubes with different discrepancies", std::move(w)));
    }
  }
  return done(Verdict::pass("straight", l, examined));
}

InducedSubspace induced_subspace(const FiniteCubespace& x, const std::vector<PointId>& subset) {
  std::vector<PointId> new_of_old(x.points(), Section::kNone);
  InducedSubspace out{FiniteCubespace(1, {{0}}), subset};
  std::sort(out.old_of_new.begin(), out.old_of_new.end());
  for (PointId k = 0; k < out.old_of_new.size(); ++k) new_of_old[out.old_of_new[k]] = k;
  const auto m = static_cast<PointId>(out.old_of_new.size());
  if (m == 0) throw InputError("cocycle.EmptySubspace", "induced subspace on no points");
  std::vector<std::vector<CubeCode>> cubes(x.lmax() + 1);
  for (int l = 0; l <= x.lmax(); ++l) {
    const auto& set = x.cubes(l);
    ConfigCodec codec(m, l);
    std::vector<PointId> buf(vertex_count(l));
    for (CubeCode code : set.codes()) {
      set.codec().decode(code, buf);
      bool inside = true;
      for (auto& v : buf) {
        v = new_of_old[v];
        inside &= v != Section::kNone;
      }
      if (inside) cubes[l].push_back(codec.encode(buf));
    }
  }
  out.space = FiniteCubespace(m, std::move(cubes));
  return out;
}

Straightening straighten_section(const NilspaceTop& t, CubespaceMap& psi, const Section& sigma0) {
  require_psi(t, psi);
  if (sigma0.value.size() != t.base_points() || !saturated(psi, sigma0))
    throw InputError("cocycle.BadSection", "sigma0 is not defined on a union of psi-fibres");
  for (PointId b = 0; b < sigma0.value.size(); ++b)
    if (sigma0.defined(b) && t.top.pi[sigma0.value[b]] != b)
      throw InputError("cocycle.BadSection", "pi(sigma0(b)) != b at b = " + std::to_string(b));
  const int l = t.s + 1;

  // restrict psi to U -> psi(U) when U is not everything
  std::vector<PointId> u, v;
  for (PointId b = 0; b < sigma0.value.size(); ++b)
    if (sigma0.defined(b)) u.push_back(b);
  for (PointId b : u) v.push_back(psi(b));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  CubespaceMap local;
  std::vector<PointId> u_of;  // local point -> point of pi(X)
  if (u.size() == sigma0.value.size()) {
    local = psi;
    u_of = u;
  } else {
    auto bu = induced_subspace(*psi.source, u);
    auto bv = induced_subspace(*psi.target, v);
    std::vector<PointId> m(u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
      m[k] = static_cast<PointId>(std::lower_bound(v.begin(), v.end(), psi(u[k])) - v.begin());
    local = CubespaceMap(share(std::move(bu.space)), share(std::move(bv.space)), std::move(m));
    u_of = u;
  }

  Straightening out;
  const auto& cs = local.source->cubes(l);
  std::vector<Element> rho(cs.size());
  std::vector<PointId> buf(vertex_count(l));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    cs.codec().decode(cs[i], buf);
    for (auto& p : buf) p = sigma0.value[u_of[p]];
    rho[i] = discrepancy(t, Configuration(l, buf));
  }
  out.rho = Cocycle(l, local.source, t.group.group, std::move(rho));
  is_cocycle(out.rho);
  out.solution = solve_functional(local, out.rho);
  out.correction.assign(t.base_points(), t.group.group.zero());
  if (!out.solution.feasible) return out;
  Section s = sigma0;
  for (std::size_t k = 0; k < u_of.size(); ++k) {
    out.correction[u_of[k]] = out.solution.f(static_cast<PointId>(k));
    s.value[u_of[k]] = t.group.act(out.correction[u_of[k]], sigma0.value[u_of[k]]);
  }
  s.straight = {};
  check_straight(t, psi, s);
  out.section = std::move(s);
  return out;
}

namespace {

// base fibres of psi: b' -> sorted points of pi(X)
std::vector<std::vector<PointId>> psi_fibres(const CubespaceMap& psi) {
  std::vector<std::vector<PointId>> out(psi.target->points());
  for (PointId b = 0; b < psi.map.size(); ++b) out[psi(b)].push_back(b);
  return out;
}

}  // namespace

Verdict check_straight_class(const NilspaceTop& t, const CubespaceMap& psi, const StraightClass& d) {
  require_psi(t, psi);
  const int l = t.s + 1;
  const auto fibres = psi_fibres(psi);
  if (d.base >= fibres.size()) throw InputError("cocycle.BadClass", "base point out of range");
  std::vector<PointId> rep(t.base_points(), Section::kNone);
  for (PointId x : d.points) {
    const PointId b = t.top.pi[x];
    if (psi(b) != d.base || rep[b] != Section::kNone) {
      Witness w;
      w.ints = {x};
      return Verdict::fail("straight-class", l, "not one point per fibre over the base", std::move(w));
    }
    rep[b] = x;
  }
  for (PointId b : fibres[d.base])
    if (rep[b] == Section::kNone) {
      Witness w;
      w.ints = {b};
      return Verdict::fail("straight-class", l, "a fibre over the base is missed", std::move(w));
    }
  const auto& bs = t.top.base->cubes(l);
  std::vector<PointId> buf(vertex_count(l));
  std::uint64_t examined = 0;
  for (CubeCode code : bs.codes()) {
    bs.codec().decode(code, buf);
    if (!std::all_of(buf.begin(), buf.end(), [&](PointId b) { return rep[b] != Section::kNone; })) continue;
    ++examined;
    for (auto& b : buf) b = rep[b];
    Configuration c(l, buf);
    if (!t.space->contains(c)) {
      Witness w;
      w.configs = {c};
      return Verdict::fail("straight-class", l, "a configuration over a cube is not a cube", std::move(w));
    }
  }
  return Verdict::pass("straight-class", l, examined);
}

StraightClassReport straight_classes(const NilspaceTop& t, const CubespaceMap& psi) {
  require_psi(t, psi);
  const int l = t.s + 1;
  const auto fibres = psi_fibres(psi);
  const auto& bs = t.top.base->cubes(l);
  StraightClassReport out;

  std::vector<PointId> pos(t.base_points());
  for (const auto& f : fibres)
    for (std::size_t k = 0; k < f.size(); ++k) pos[f[k]] = static_cast<PointId>(k);
  // cubes of pi(X) inside one psi-fibre, keyed by the last fibre they touch
  std::vector<std::vector<std::vector<CubeCode>>> keyed(fibres.size());
  for (std::size_t b = 0; b < fibres.size(); ++b) keyed[b].resize(fibres[b].size());
  std::vector<PointId> buf(vertex_count(l));
  for (CubeCode code : bs.codes()) {
    bs.codec().decode(code, buf);
    const PointId bb = psi(buf[0]);
    if (!std::all_of(buf.begin(), buf.end(), [&](PointId b) { return psi(b) == bb; })) continue;
    PointId key = 0;
    for (PointId b : buf) key = std::max(key, pos[b]);
    keyed[bb][key].push_back(code);
  }

  std::vector<PointId> choice(t.base_points(), Section::kNone);
  std::vector<PointId> cfg(vertex_count(l));
  for (PointId bb = 0; bb < fibres.size(); ++bb) {
    const auto& f = fibres[bb];
    if (f.empty()) continue;
    std::vector<std::size_t> idx(f.size(), 0);
    // iterative depth-first search over transversals
    std::size_t depth = 0;
    while (true) {
      const auto& members = t.top.relation.members(f[depth]);
      if (idx[depth] == members.size()) {
        choice[f[depth]] = Section::kNone;
        idx[depth] = 0;
        if (depth == 0) break;
        --depth;
        ++idx[depth];
        continue;
      }
      choice[f[depth]] = members[idx[depth]];
      check_guard("straight class search", ++out.transversals_examined);
      bool ok = true;
      for (CubeCode code : keyed[bb][depth]) {
        bs.codec().decode(code, buf);
        for (VertexIndex w = 0; w < buf.size(); ++w) cfg[w] = choice[buf[w]];
        if (!t.space->contains(Configuration(l, cfg))) {
          ok = false;
          break;
        }
      }
      if (ok && depth + 1 == f.size()) {
        StraightClass d{bb, {}};
        for (PointId b : f) d.points.push_back(choice[b]);
        std::sort(d.points.begin(), d.points.end());
        out.classes.push_back(std::move(d));
        ok = false;
      }
      if (ok) {
        ++depth;
      } else {
        ++idx[depth];
      }
    }
  }

  // partition
  std::vector<std::vector<std::int64_t>> holders(t.space->points());
  for (std::size_t k = 0; k < out.classes.size(); ++k)
    for (PointId x : out.classes[k].points) holders[x].push_back(static_cast<std::int64_t>(k));
  out.partition = Verdict::pass("partition", l, out.classes.size());
  for (PointId x = 0; x < holders.size(); ++x)
    if (holders[x].size() != 1) {
      Witness w;
      w.ints = {x, static_cast<std::int64_t>(holders[x].size())};
      w.ints.insert(w.ints.end(), holders[x].begin(), holders[x].end());
      out.partition = Verdict::fail("partition", l,
                                    holders[x].empty() ? "a point lies in no straight class"
                                                       : "a point lies in several straight classes",
                                    std::move(w));
      break;
    }

  // classes over one base form a single A-orbit
  out.translates = Verdict::pass("translates", l, out.classes.size());
  std::map<PointId, std::set<std::vector<PointId>>> by_base;
  for (const auto& d : out.classes) by_base[d.base].insert(d.points);
  for (const auto& [bb, set] : by_base) {
    const auto& d0 = *set.begin();
    std::set<std::vector<PointId>> orbit;
    for (Element a = 0; a < t.group.group.order(); ++a) {
      std::vector<PointId> moved;
      for (PointId x : d0) moved.push_back(t.group.act(a, x));
      std::sort(moved.begin(), moved.end());
      orbit.insert(std::move(moved));
    }
    if (orbit != set) {
      Witness w;
      w.ints = {bb, static_cast<std::int64_t>(set.size()), static_cast<std::int64_t>(orbit.size())};
      out.translates = Verdict::fail("translates", l, "straight classes over a base are not one A-orbit", std::move(w));
      break;
    }
  }
  return out;
}

std::vector<StraightClass> section_classes(const NilspaceTop& t, const CubespaceMap& psi, const Section& sigma) {
  require_psi(t, psi);
  std::vector<StraightClass> out;
  const auto fibres = psi_fibres(psi);
  for (PointId bb = 0; bb < fibres.size(); ++bb) {
    if (fibres[bb].empty()) continue;
    for (Element a = 0; a < t.group.group.order(); ++a) {
      StraightClass d{bb, {}};
      for (PointId b : fibres[bb]) {
        if (!sigma.defined(b)) throw InputError("cocycle.BadSection", "section must be defined everywhere");
        d.points.push_back(t.group.act(a, sigma.value[b]));
      }
      std::sort(d.points.begin(), d.points.end());
      out.push_back(std::move(d));
    }
  }
  return out;
}

StraightQuotient quotient_by_straight_classes(const NilspaceTop& t, CubespaceMap& psi,
                                              const std::vector<StraightClass>& classes) {
  require_psi(t, psi);
  const PointId n = t.space->points();
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (PointId x : classes[k].points) {
      if (x >= n || label[x] != UINT32_MAX)
        throw InputError("cocycle.NotPartition", "point " + std::to_string(x) + " lies in two classes");
      label[x] = static_cast<std::uint32_t>(k);
    }
  for (PointId x = 0; x < n; ++x)
    if (label[x] == UINT32_MAX)
      throw InputError("cocycle.NotPartition", "point " + std::to_string(x) + " lies in no class");

  StraightQuotient out;
  auto q = quotient_cubespace(*t.space, EquivRelation::from_labels(label));
  out.space = share(std::move(q.space));
  out.phi = CubespaceMap(t.space, out.space, std::move(q.projection));
  check_morphism(out.phi);
  check_fibration(out.phi, std::min(t.space->lmax(), out.space->lmax()));
  if (!out.phi.fibration.passed()) {
    out.shadow_matches = Verdict::fail("shadow", t.s, "the quotient map is not a fibration", Witness{});
    out.structure_group = Verdict::fail("structure-group", t.s, "not computed", Witness{});
    return out;
  }
  out.classification = classify(out.phi, t.s);

  // shadow(phi) against psi: beta(shadow(b)) = psi(b) must be an isomorphism
  auto sh = shadow(out.phi, t.s);
  const PointId ny = sh.psi.target->points();
  out.base_iso.assign(ny, Section::kNone);
  bool ok = sh.psi.surjective();
  for (PointId b = 0; b < sh.psi.map.size() && ok; ++b) {
    auto& slot = out.base_iso[sh.psi(b)];
    ok = slot == Section::kNone || slot == psi(b);
    slot = psi(b);
  }
  if (ok) {
    CubespaceMap beta(sh.psi.target, psi.target, out.base_iso);
    ok = beta.injective() && beta.surjective();
    for (int l = 0; ok && l <= std::min(beta.source->lmax(), beta.target->lmax()); ++l)
      ok = beta.source->cubes(l).size() == beta.target->cubes(l).size();
    ok = ok && check_morphism(beta).passed;
  }
  out.shadow_matches = ok ? Verdict::pass("shadow", t.s, ny)
                          : Verdict::fail("shadow", t.s, "shadow(phi) does not match psi", Witness{});

  try {
    auto ay = structure_group(*out.space, t.s);
    const bool same = ay.group.invariants() == t.group.group.invariants();
    Witness w;
    for (auto v : ay.group.invariants()) w.ints.push_back(v);
    out.structure_group = same ? Verdict::pass("structure-group", t.s, ay.group.order())
                               : Verdict::fail("structure-group", t.s, "structure groups differ", std::move(w));
  } catch (const StructureError& e) {
    out.structure_group = Verdict::fail("structure-group", t.s, e.what(), Witness{});
  }
  return out;
}

}  // namespace nilkit
