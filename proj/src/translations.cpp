#include "nilkit/translations.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nilkit/error.hpp"

namespace nilkit {

namespace {

void require_bijection(const FiniteCubespace& x, const Permutation& f) {
  if (f.size() != x.points()) throw InputError("translations.NotBijection", "one image per point expected");
  std::vector<bool> hit(f.size(), false);
  for (PointId v : f) {
    if (v >= f.size() || hit[v]) throw InputError("translations.NotBijection", "map is not a bijection");
    hit[v] = true;
  }
}

// faces of codimension i of {0,1}^l as vertex lists
std::vector<std::vector<VertexIndex>> face_vertices(int l, int i) {
  std::vector<std::vector<VertexIndex>> out;
  for (const auto& f : enumerate_faces(l, i)) out.push_back(f.members());
  return out;
}

bool scan(const FiniteCubespace& x, const Permutation& f, int i, int up_to, Witness* w, std::uint64_t* examined) {
  std::vector<PointId> buf, moved;
  for (int l = i; l <= up_to; ++l) {
    const auto& set = x.cubes(l);
    const auto faces = face_vertices(l, i);
    buf.resize(vertex_count(l));
    for (CubeCode code : set.codes()) {
      set.codec().decode(code, buf);
      for (std::size_t k = 0; k < faces.size(); ++k) {
        moved = buf;
        for (VertexIndex v : faces[k]) moved[v] = f[moved[v]];
        if (examined) ++*examined;
        if (!set.contains(set.codec().encode(moved))) {
          if (w) {
            w->configs = {Configuration(l, buf)};
            w->face = enumerate_faces(l, i)[k];
          }
          return false;
        }
      }
    }
  }
  return true;
}

void check_level(const FiniteCubespace& x, int i, int up_to) {
  if (i < 1 || i > up_to || up_to > x.lmax())
    throw InputError("translations.BadLevel", "need 1 <= i <= up_to <= lmax");
}

}  // namespace

Verdict is_translation(const FiniteCubespace& x, const Permutation& f, int i, int up_to) {
  require_bijection(x, f);
  check_level(x, i, up_to);
  Witness w;
  std::uint64_t examined = 0;
  if (!scan(x, f, i, up_to, &w, &examined))
    return Verdict::fail("translation", i, "[f]_F.c is not a cube", std::move(w));
  return Verdict::pass("translation", i, examined);
}

Translation make_translation(SpacePtr x, Permutation f, int i) {
  Translation t;
  t.level = i;
  t.verified_up_to = x->lmax();
  t.status.record(is_translation(*x, f, i, x->lmax()));
  t.space = std::move(x);
  t.perm = std::move(f);
  return t;
}

Permutation compose_perm(const Permutation& g, const Permutation& f) {
  Permutation out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = g[f[k]];
  return out;
}

Permutation invert_perm(const Permutation& f) {
  Permutation out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[f[k]] = static_cast<PointId>(k);
  return out;
}

namespace {

TranslationGroup group_of(int i, bool exhaustive, const std::vector<Permutation>& gens) {
  TranslationGroup g;
  g.level = i;
  g.exhaustive = exhaustive;
  g.group = permutation_group(gens, &g.elements);
  return g;
}

}  // namespace

TranslationGroup translation_group(const FiniteCubespace& x, int i) {
  if (x.points() > kTranslationBruteForceCap)
    throw InputError("translations.CapExceeded", "brute force is limited to " +
                                                     std::to_string(kTranslationBruteForceCap) + " points");
  check_level(x, i, x.lmax());
  Permutation p(x.points());
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> found;
  do {
    if (scan(x, p, i, x.lmax(), nullptr, nullptr)) found.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto g = group_of(i, true, found);
  // the translations form a group: the closure adds nothing
  if (g.elements.size() != found.size())
    throw Error("translations.NotClosed", "i-translations are not closed under composition");
  return g;
}

TranslationGroup generated_translation_group(const FiniteCubespace& x, int i, const std::vector<Permutation>& candidates) {
  check_level(x, i, x.lmax());
  std::vector<Permutation> gens;
  for (const auto& c : candidates) {
    require_bijection(x, c);
    if (scan(x, c, i, x.lmax(), nullptr, nullptr)) gens.push_back(c);
  }
  if (gens.empty()) {
    Permutation id(x.points());
    std::iota(id.begin(), id.end(), 0);
    gens.push_back(id);
  }
  return group_of(i, false, gens);
}

AutFiltration translation_filtration(const FiniteCubespace& x) {
  AutFiltration out;
  for (int i = 1; i <= x.lmax(); ++i) out.levels.push_back(translation_group(x, i));
  auto contains = [](const TranslationGroup& g, const Permutation& p) {
    return std::find(g.elements.begin(), g.elements.end(), p) != g.elements.end();
  };
  out.nesting = Verdict::pass("nesting", 0, out.levels.size());
  for (std::size_t k = 1; k < out.levels.size() && out.nesting.passed; ++k)
    for (const auto& p : out.levels[k].elements)
      if (!contains(out.levels[k - 1], p)) {
        Witness w;
        w.ints = {static_cast<std::int64_t>(k + 1)};
        w.ints.insert(w.ints.end(), p.begin(), p.end());
        out.nesting = Verdict::fail("nesting", static_cast<int>(k + 1), "Aut_{i+1} is not inside Aut_i", std::move(w));
        break;
      }
  out.commutators = Verdict::pass("commutators", 0, 0);
  std::uint64_t examined = 0;
  const int top = static_cast<int>(out.levels.size());
  for (int i = 1; i <= top; ++i)
    for (int j = i; i + j <= top; ++j)
      for (const auto& f : out.levels[i - 1].elements)
        for (const auto& g : out.levels[j - 1].elements) {
          ++examined;
          auto c = compose_perm(compose_perm(invert_perm(f), invert_perm(g)), compose_perm(f, g));
          if (!contains(out.levels[i + j - 1], c)) {
            Witness w;
            w.ints = {i, j};
            out.commutators = Verdict::fail("commutators", i + j, "[Aut_i, Aut_j] leaves Aut_{i+j}", std::move(w));
            return out;
          }
        }
  out.commutators.examined = examined;
  return out;
}

Translation push_translation(const CubespaceMap& phi, const Translation& f) {
  const PointId ny = phi.target->points();
  std::vector<std::vector<PointId>> fibre(ny);
  for (PointId x = 0; x < phi.map.size(); ++x) fibre[phi(x)].push_back(x);
  Permutation fp(ny, UINT32_MAX);
  for (PointId y = 0; y < ny; ++y) {
    if (fibre[y].empty()) throw DescentError("translations.NoDescent", "phi is not onto", {y});
    const PointId y2 = phi(f(fibre[y].front()));
    std::vector<PointId> img;
    for (PointId x : fibre[y]) img.push_back(f(x));
    std::sort(img.begin(), img.end());
    if (img != fibre[y2])
      throw DescentError("translations.NoDescent",
                         "the fibre over " + std::to_string(y) + " is not mapped onto a fibre", {y});
    fp[y] = y2;
  }
  const int up_to = std::min(phi.target->lmax(), std::max(f.verified_up_to, f.level));
  Translation out;
  out.space = phi.target;
  out.perm = std::move(fp);
  out.level = f.level;
  out.verified_up_to = up_to;
  out.status.record(is_translation(*phi.target, out.perm, f.level, up_to));
  return out;
}

std::vector<Translation> pull_translation(const CubespaceMap& phi, const Translation& fprime) {
  const PointId nx = phi.source->points();
  std::vector<std::vector<PointId>> fibre(phi.target->points());
  for (PointId x = 0; x < nx; ++x) fibre[phi(x)].push_back(x);
  std::vector<Translation> out;
  Permutation f(nx, UINT32_MAX);
  std::vector<bool> used(nx, false);
  std::uint64_t visited = 0;
  const int up_to = phi.source->lmax();
  // depth-first over points, images confined to the fibre over f'(phi(x))
  auto rec = [&](auto&& self, PointId x) -> void {
    if (x == nx) {
      if (scan(*phi.source, f, fprime.level, up_to, nullptr, nullptr)) {
        Translation t;
        t.space = phi.source;
        t.perm = f;
        t.level = fprime.level;
        t.verified_up_to = up_to;
        t.status.record(Verdict::pass("translation", fprime.level, 0));
        out.push_back(std::move(t));
      }
      return;
    }
    for (PointId cand : fibre[fprime(phi(x))]) {
      if (used[cand]) continue;
      check_guard("lift search", ++visited);
      used[cand] = true;
      f[x] = cand;
      self(self, x + 1);
      used[cand] = false;
    }
  };
  rec(rec, 0);
  return out;
}

Verdict check_respects_fibres(const CubespaceMap& phi, const Permutation& f) {
  const PointId n = phi.source->points();
  std::uint64_t examined = 0;
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b) {
      if (phi(a) != phi(b)) continue;
      ++examined;
      if (phi(f[a]) != phi(f[b])) {
        Witness w;
        w.ints = {a, b};
        return Verdict::fail("respects-fibres", 1, "phi(x) = phi(x') but phi(f(x)) != phi(f(x'))", std::move(w));
      }
    }
  return Verdict::pass("respects-fibres", 1, examined);
}

}  // namespace nilkit
