#include "nilkit/map.hpp"

#include <algorithm>

#include "nilkit/error.hpp"

namespace nilkit {

CubespaceMap::CubespaceMap(SpacePtr src, SpacePtr tgt, std::vector<PointId> m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
  if (!source || !target) throw InputError("fibrations.BadMap", "missing source or target");
  if (map.size() != source->points()) throw InputError("fibrations.BadMap", "map size differs from the source");
  for (PointId y : map)
    if (y >= target->points()) throw InputError("fibrations.BadMap", "map value outside the target");
}

Configuration CubespaceMap::apply(const Configuration& c) const {
  Configuration out = c;
  for (auto& v : out.values) v = map[v];
  return out;
}

bool CubespaceMap::injective() const {
  std::vector<char> hit(target->points(), 0);
  for (PointId y : map) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

bool CubespaceMap::surjective() const {
  std::vector<char> hit(target->points(), 0);
  for (PointId y : map) hit[y] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

CubespaceMap identity_map(SpacePtr x) {
  std::vector<PointId> id(x->points());
  for (PointId p = 0; p < id.size(); ++p) id[p] = p;
  return CubespaceMap(x, x, std::move(id));
}

CubespaceMap compose(const CubespaceMap& g, const CubespaceMap& f) {
  if (f.target->points() != g.source->points())
    throw InputError("fibrations.BadMap", "maps are not composable");
  std::vector<PointId> m(f.map.size());
  for (PointId x = 0; x < m.size(); ++x) m[x] = g.map[f.map[x]];
  return CubespaceMap(f.source, g.target, std::move(m));
}

Verdict check_morphism(CubespaceMap& f) {
  const FiniteCubespace& x = *f.source;
  const FiniteCubespace& y = *f.target;
  const int top = std::min(x.lmax(), y.lmax());
  std::uint64_t examined = 0;
  std::vector<PointId> vals;
  for (int l = 0; l <= top; ++l) {
    const CubeSet& src = x.cubes(l);
    const CubeSet& dst = y.cubes(l);
    vals.resize(vertex_count(l));
    for (CubeCode c : src.codes()) {
      src.codec().decode(c, vals);
      for (auto& v : vals) v = f.map[v];
      ++examined;
      if (!dst.contains(dst.codec().encode(vals))) {
        Witness w;
        w.configs.push_back(src.codec().decode(c));
        auto v = Verdict::fail("morphism", l, "image of a cube is not a cube", std::move(w));
        v.examined = examined;
        f.morphism.record(v);
        return v;
      }
    }
  }
  auto v = Verdict::pass("morphism", top, examined);
  f.morphism.record(v);
  return v;
}

Verdict check_fibration(CubespaceMap& f, int up_to) {
  const FiniteCubespace& x = *f.source;
  const FiniteCubespace& y = *f.target;
  if (up_to > x.lmax() || up_to > y.lmax())
    throw InputError("fibrations.BadLevel", "fibration level above lmax");
  std::uint64_t examined = 0;
  std::vector<PointId> image;
  std::vector<char> reach(y.points());
  for (int l = 0; l <= up_to; ++l) {
    const CubeSet& xs = x.cubes(l);
    const CubeSet& ys = y.cubes(l);
    const ConfigCodec& ycodec = ys.codec();
    std::optional<Witness> bad;
    image.resize(vertex_count(l));
    examined += for_each_corner(x, l, [&](std::span<const PointId> vals, CubeCode base) {
      for (std::size_t k = 0; k < vals.size(); ++k) image[k] = f.map[vals[k]];
      image.back() = 0;
      const CubeCode ybase = ycodec.encode(image);
      auto [ylo, yhi] = ys.range(ybase, ybase + (y.points() - 1));
      if (ylo == yhi) return true;
      std::fill(reach.begin(), reach.end(), 0);
      auto [xlo, xhi] = xs.range(base, base + (x.points() - 1));
      for (std::size_t k = xlo; k < xhi; ++k) reach[f.map[xs[k] - base]] = 1;
      for (std::size_t k = ylo; k < yhi; ++k) {
        if (!reach[ys[k] - ybase]) {
          Witness w;
          w.corner = Corner(l, std::vector<PointId>(vals.begin(), vals.end()));
          w.configs.push_back(ycodec.decode(ys[k]));
          bad = std::move(w);
          return false;
        }
      }
      return true;
    });
    if (bad) {
      auto v = Verdict::fail("fibration", l, "a compatible cube of the target has no lift", std::move(*bad));
      v.examined = examined;
      f.fibration.record(v);
      return v;
    }
  }
  auto v = Verdict::pass("fibration", up_to, examined);
  f.fibration.record(v);
  return v;
}

}  // namespace nilkit
