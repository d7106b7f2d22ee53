#include "nilkit/cubespace.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "nilkit/error.hpp"

namespace nilkit {

CubeSet::CubeSet(PointId points, int dim, std::vector<CubeCode> codes)
    : codec_(points, dim), codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  if (!codes_.empty() && codec_.space_size() != UINT64_MAX && codes_.back() >= codec_.space_size())
    throw InputError("cubespace.BadCode", "cube code out of range for dimension " + std::to_string(dim));
}

bool CubeSet::contains(CubeCode code) const {
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

bool CubeSet::contains(const Configuration& c) const {
  if (c.dim != dim()) return false;
  for (PointId p : c.values)
    if (p >= codec_.points()) return false;
  return contains(codec_.encode(c));
}

std::pair<std::size_t, std::size_t> CubeSet::range(CubeCode low, CubeCode high) const {
  auto lo = std::lower_bound(codes_.begin(), codes_.end(), low);
  auto hi = std::upper_bound(lo, codes_.end(), high);
  return {static_cast<std::size_t>(lo - codes_.begin()), static_cast<std::size_t>(hi - codes_.begin())};
}

std::pair<std::size_t, std::size_t> CubeSet::prefix_range(CubeCode prefix, VertexIndex digits) const {
  if (digits == 0) return {0, codes_.size()};
  const std::uint64_t w = codec_.weight(digits - 1);
  const CubeCode low = prefix * w;
  return range(low, low + (w - 1));
}

FiniteCubespace::FiniteCubespace(PointId points, std::vector<std::vector<CubeCode>> cubes) : n_(points) {
  if (points == 0) throw InputError("cubespace.EmptySpace", "a cubespace needs at least one point");
  if (cubes.empty()) throw InputError("cubespace.NoCubes", "C^0 is required");
  sets_.reserve(cubes.size());
  for (std::size_t l = 0; l < cubes.size(); ++l) sets_.emplace_back(points, static_cast<int>(l), std::move(cubes[l]));
  if (sets_[0].size() != points)
    throw InputError("cubespace.BadC0", "C^0 must contain every point exactly once");
}

bool FiniteCubespace::contains(const Configuration& c) const {
  if (c.dim < 0 || c.dim > lmax()) return false;
  return sets_[c.dim].contains(c);
}

FiniteCubespace FiniteCubespace::truncated(int l) const {
  std::vector<std::vector<CubeCode>> cubes;
  for (int k = 0; k <= std::min(l, lmax()); ++k) cubes.push_back(sets_[k].codes());
  return FiniteCubespace(n_, std::move(cubes));
}

FiniteCubespace point_cubespace(int lmax) {
  return FiniteCubespace(1, std::vector<std::vector<CubeCode>>(lmax + 1, std::vector<CubeCode>{0}));
}

FiniteCubespace full_cubespace(PointId points, int lmax) {
  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= lmax; ++l) {
    ConfigCodec codec(points, l);
    check_guard("full_cubespace C^" + std::to_string(l), codec.space_size());
    std::vector<CubeCode> all(codec.space_size());
    for (CubeCode c = 0; c < all.size(); ++c) all[c] = c;
    cubes.push_back(std::move(all));
  }
  return FiniteCubespace(points, std::move(cubes));
}

std::vector<CubeMorphism> invariance_generators(int lmax) {
  using K = MorphismCoord::Kind;
  std::vector<CubeMorphism> gens;
  auto proj = [](int i) { return MorphismCoord{K::Proj, i}; };
  for (int k = 0; k <= lmax; ++k) {
    std::vector<MorphismCoord> id;
    for (int i = 1; i <= k; ++i) id.push_back(proj(i));
    if (k >= 1) {
      auto refl = id;
      refl[0] = {K::Flip, 1};
      gens.emplace_back(k, refl);
      // restriction to w_k = 0
      std::vector<MorphismCoord> face(id.begin(), id.end() - 1);
      face.push_back({K::Const0, 0});
      gens.emplace_back(k - 1, face);
    }
    for (int i = 1; i + 1 <= k; ++i) {
      auto swap = id;
      std::swap(swap[i - 1], swap[i]);
      gens.emplace_back(k, swap);
    }
    if (k >= 2) {
      std::vector<MorphismCoord> diag(id.begin(), id.end() - 1);
      diag.push_back(proj(k - 1));
      gens.emplace_back(k - 1, diag);
    }
    if (k + 1 <= lmax) gens.emplace_back(k + 1, id);
  }
  return gens;
}

namespace {

Verdict check_morphism_list(const FiniteCubespace& x, const std::vector<CubeMorphism>& morphisms,
                            const char* name) {
  std::uint64_t examined = 0;
  std::vector<PointId> in, out;
  for (const auto& phi : morphisms) {
    const int k = phi.target_dim();
    const int l = phi.source_dim();
    if (k > x.lmax() || l > x.lmax()) continue;
    const auto table = phi.vertex_table();
    const CubeSet& src = x.cubes(k);
    const CubeSet& dst = x.cubes(l);
    in.resize(vertex_count(k));
    out.resize(vertex_count(l));
    for (CubeCode code : src.codes()) {
      src.codec().decode(code, in);
      for (VertexIndex w = 0; w < out.size(); ++w) out[w] = in[table[w]];
      ++examined;
      if (!dst.contains(dst.codec().encode(out))) {
        Witness wit;
        wit.configs.push_back(src.codec().decode(code));
        wit.morphism = phi;
        return Verdict::fail(name, l, "c o phi is not a cube for phi = " + phi.to_string(), std::move(wit));
      }
    }
  }
  return Verdict::pass(name, x.lmax(), examined);
}

}  // namespace

Verdict check_cube_invariance(const FiniteCubespace& x) {
  return check_morphism_list(x, invariance_generators(x.lmax()), "invariance");
}

Verdict check_cube_invariance_exhaustive(const FiniteCubespace& x) {
  std::vector<CubeMorphism> all;
  for (int k = 0; k <= x.lmax(); ++k)
    for (int l = 0; l <= x.lmax(); ++l)
      for (auto& phi : enumerate_morphisms(l, k)) all.push_back(std::move(phi));
  return check_morphism_list(x, all, "invariance");
}

FiniteCubespace invariance_closure(PointId points, int lmax,
                                   const std::vector<std::vector<Configuration>>& seeds) {
  if (points == 0) throw InputError("cubespace.EmptySpace", "a cubespace needs at least one point");
  std::vector<ConfigCodec> codecs;
  for (int l = 0; l <= lmax; ++l) codecs.emplace_back(points, l);
  std::vector<std::unordered_set<CubeCode>> sets(lmax + 1);
  std::deque<std::pair<int, CubeCode>> work;
  auto insert = [&](int l, CubeCode c) {
    if (sets[l].insert(c).second) {
      check_guard("invariance_closure C^" + std::to_string(l), sets[l].size());
      work.emplace_back(l, c);
    }
  };
  for (PointId p = 0; p < points; ++p) insert(0, p);
  for (std::size_t l = 0; l < seeds.size(); ++l)
    for (const auto& c : seeds[l]) {
      if (c.dim != static_cast<int>(l) || c.dim > lmax)
        throw InputError("cubespace.BadSeed", "seed dimension mismatch or above lmax");
      for (PointId p : c.values)
        if (p >= points) throw InputError("cubespace.BadSeed", "seed point out of range");
      insert(c.dim, codecs[c.dim].encode(c));
    }
  const auto gens = invariance_generators(lmax);
  std::vector<std::vector<std::pair<int, std::vector<VertexIndex>>>> by_target(lmax + 1);
  for (const auto& g : gens) by_target[g.target_dim()].emplace_back(g.source_dim(), g.vertex_table());
  std::vector<PointId> in, out;
  while (!work.empty()) {
    auto [k, code] = work.front();
    work.pop_front();
    in.resize(vertex_count(k));
    codecs[k].decode(code, in);
    for (const auto& [l, table] : by_target[k]) {
      out.resize(vertex_count(l));
      for (VertexIndex w = 0; w < out.size(); ++w) out[w] = in[table[w]];
      insert(l, codecs[l].encode(out));
    }
  }
  std::vector<std::vector<CubeCode>> cubes(lmax + 1);
  for (int l = 0; l <= lmax; ++l) cubes[l].assign(sets[l].begin(), sets[l].end());
  return FiniteCubespace(points, std::move(cubes));
}

Verdict check_ergodic(const FiniteCubespace& x, int s) {
  if (s < 0 || s > x.lmax()) throw InputError("cubespace.BadLevel", "ergodicity level above lmax");
  const CubeSet& set = x.cubes(s);
  const std::uint64_t space = set.codec().space_size();
  if (set.size() == space) return Verdict::pass("ergodic", s, set.size());
  CubeCode missing = 0;
  for (CubeCode c : set.codes()) {
    if (c != missing) break;
    ++missing;
  }
  Witness w;
  w.configs.push_back(set.codec().decode(missing));
  auto v = Verdict::fail("ergodic", s,
                         std::to_string(set.size()) + " of " + std::to_string(space) + " configurations are cubes",
                         std::move(w));
  v.examined = set.size();
  return v;
}

std::uint64_t for_each_corner(const FiniteCubespace& x, int dim,
                              const std::function<bool(std::span<const PointId>, CubeCode)>& visit) {
  if (dim < 0 || dim > x.lmax()) throw InputError("cubespace.BadLevel", "corner dimension above lmax");
  if (dim == 0) {
    visit({}, 0);
    return 1;
  }
  const PointId n = x.points();
  const CubeSet& faces = x.cubes(dim - 1);
  const auto& codes = faces.codes();
  const ConfigCodec& fcodec = faces.codec();
  const ConfigCodec full(n, dim);
  const VertexIndex top = top_vertex(dim);
  const VertexIndex face_vertices = vertex_count(dim - 1);

  // per face (one per coordinate, w_i = 0), ranges indexed by assigned digits
  struct FaceState {
    std::vector<std::size_t> lo, hi;
    std::vector<CubeCode> prefix;
  };
  std::vector<FaceState> st(dim);
  for (auto& f : st) {
    f.lo.assign(face_vertices + 1, 0);
    f.hi.assign(face_vertices + 1, codes.size());
    f.prefix.assign(face_vertices + 1, 0);
  }
  auto compress = [](VertexIndex v, int i) {
    const VertexIndex low = v & ((VertexIndex{1} << i) - 1);
    return low | ((v >> (i + 1)) << i);
  };

  std::vector<PointId> vals(top, 0);
  std::uint64_t count = 0;
  bool stop = false;

  // narrow face i at position p with digit d; returns false if empty
  auto narrow = [&](int i, VertexIndex p, PointId d) {
    auto& f = st[i];
    const CubeCode pre = f.prefix[p] * n + d;
    const std::uint64_t w = fcodec.weight(p);
    const CubeCode low = pre * w;
    auto b = codes.begin();
    auto lo = std::lower_bound(b + f.lo[p], b + f.hi[p], low);
    auto hi = std::upper_bound(lo, b + f.hi[p], low + (w - 1));
    if (lo == hi) return false;
    f.lo[p + 1] = static_cast<std::size_t>(lo - b);
    f.hi[p + 1] = static_cast<std::size_t>(hi - b);
    f.prefix[p + 1] = pre;
    return true;
  };

  std::function<void(VertexIndex, CubeCode)> assign = [&](VertexIndex v, CubeCode base) {
    if (stop) return;
    if (v == top) {
      ++count;
      if (!visit(vals, base)) stop = true;
      return;
    }
    int lead = -1;
    std::size_t best = SIZE_MAX;
    for (int i = 0; i < dim; ++i) {
      if ((v >> i) & 1U) continue;
      const VertexIndex p = compress(v, i);
      const std::size_t width = st[i].hi[p] - st[i].lo[p];
      if (width < best) {
        best = width;
        lead = i;
      }
    }
    const VertexIndex lp = compress(v, lead);
    std::size_t k = st[lead].lo[lp];
    const std::size_t end = st[lead].hi[lp];
    while (k < end && !stop) {
      const PointId d = fcodec.digit(codes[k], lp);
      bool ok = narrow(lead, lp, d);
      const std::size_t next = st[lead].hi[lp + 1];
      for (int i = 0; i < dim && ok; ++i) {
        if (i == lead || ((v >> i) & 1U)) continue;
        ok = narrow(i, compress(v, i), d);
      }
      if (ok) {
        vals[v] = d;
        assign(v + 1, base + static_cast<CubeCode>(d) * full.weight(v));
      }
      k = next;
    }
  };
  assign(0, 0);
  return count;
}

namespace {

bool lower_faces_are_cubes(const FiniteCubespace& x, const Corner& corner) {
  if (corner.dim == 0) return true;
  Configuration filled = corner.complete_with(0);
  for (int i = 1; i <= corner.dim; ++i)
    if (!x.contains(slice(filled, i, 0))) return false;
  return true;
}

}  // namespace

std::vector<Configuration> complete_corner(const FiniteCubespace& x, const Corner& corner) {
  if (corner.dim > x.lmax()) throw InputError("cubespace.BadLevel", "corner dimension above lmax");
  for (PointId p : corner.values)
    if (p >= x.points()) throw InputError("cubespace.InvalidCorner", "corner point out of range");
  if (!lower_faces_are_cubes(x, corner))
    throw InputError("cubespace.InvalidCorner", "a face w_i = 0 of the corner is not a cube");
  const CubeSet& set = x.cubes(corner.dim);
  const CubeCode base = set.codec().encode(corner.complete_with(0));
  auto [lo, hi] = set.range(base, base + (x.points() - 1));
  std::vector<Configuration> out;
  for (std::size_t k = lo; k < hi; ++k) out.push_back(set.codec().decode(set[k]));
  return out;
}

Verdict check_fibrant(const FiniteCubespace& x, int up_to) {
  if (up_to > x.lmax()) throw InputError("cubespace.BadLevel", "fibrancy level above lmax");
  std::uint64_t examined = 0;
  for (int l = 0; l <= up_to; ++l) {
    const CubeSet& set = x.cubes(l);
    std::optional<Corner> bad;
    examined += for_each_corner(x, l, [&](std::span<const PointId> vals, CubeCode base) {
      auto [lo, hi] = set.range(base, base + (x.points() - 1));
      if (lo == hi) {
        bad = Corner(l, std::vector<PointId>(vals.begin(), vals.end()));
        return false;
      }
      return true;
    });
    if (bad) {
      Witness w;
      w.corner = *bad;
      auto v = Verdict::fail("fibrant", l, "corner without completion in dimension " + std::to_string(l), std::move(w));
      v.examined = examined;
      return v;
    }
  }
  return Verdict::pass("fibrant", up_to, examined);
}

Verdict check_uniqueness(const FiniteCubespace& x, int s) {
  if (s < 0 || s > x.lmax()) throw InputError("cubespace.BadLevel", "uniqueness level above lmax");
  const CubeSet& set = x.cubes(s);
  const PointId n = x.points();
  for (std::size_t k = 1; k < set.size(); ++k) {
    if (set[k - 1] / n == set[k] / n) {
      Witness w;
      w.configs = {set.codec().decode(set[k - 1]), set.codec().decode(set[k])};
      auto v = Verdict::fail("uniqueness", s, "two cubes agree off the top vertex", std::move(w));
      v.examined = k + 1;
      return v;
    }
  }
  return Verdict::pass("uniqueness", s, set.size());
}

Verdict check_glueing(const FiniteCubespace& x, int up_to) {
  if (up_to > x.lmax()) throw InputError("cubespace.BadLevel", "glueing level above lmax");
  std::uint64_t examined = 0;
  for (int l = 1; l <= up_to; ++l) {
    const CubeSet& lower = x.cubes(l - 1);
    const CubeSet& upper = x.cubes(l);
    const std::uint64_t half = upper.codec().weight(vertex_count(l - 1) - 1);  // n^{2^{l-1}}
    using Range = std::pair<std::size_t, std::size_t>;
    // N(c) = {c2 : [c,c2] in C^l} is a contiguous range of `upper`
    auto neighbours = [&](CubeCode c) { return upper.range(c * half, c * half + (half - 1)); };
    auto same = [&](Range a, Range b) {
      if (a.second - a.first != b.second - b.first) return false;
      for (std::size_t k = 0; k < a.second - a.first; ++k)
        if (upper[a.first + k] % half != upper[b.first + k] % half) return false;
      return true;
    };
    // identical neighbourhoods share a class id; inclusion is checked once per class pair
    std::vector<Range> reps;
    absl::flat_hash_map<std::uint64_t, std::vector<std::uint32_t>> by_hash;
    absl::flat_hash_map<CubeCode, std::uint32_t> class_cache;
    auto class_of = [&](CubeCode c) {
      if (auto it = class_cache.find(c); it != class_cache.end()) return it->second;
      const Range r = neighbours(c);
      std::uint64_t h = r.second - r.first;
      for (std::size_t k = r.first; k < r.second; ++k) h = (h ^ (upper[k] % half)) * 0x100000001b3ULL;
      auto& bucket = by_hash[h];
      std::uint32_t id = UINT32_MAX;
      for (std::uint32_t cand : bucket)
        if (same(reps[cand], r)) {
          id = cand;
          break;
        }
      if (id == UINT32_MAX) {
        id = static_cast<std::uint32_t>(reps.size());
        reps.push_back(r);
        bucket.push_back(id);
      }
      class_cache.emplace(c, id);
      return id;
    };
    auto includes = [&](Range big, Range small, CubeCode* missing) {
      std::size_t i = big.first;
      for (std::size_t k = small.first; k < small.second; ++k) {
        const CubeCode t = upper[k] % half;
        while (i < big.second && upper[i] % half < t) ++i;
        if (i == big.second || upper[i] % half != t) {
          *missing = t;
          return false;
        }
      }
      return true;
    };
    absl::flat_hash_set<std::uint64_t> checked;
    for (CubeCode c1 : lower.codes()) {
      const auto n1 = neighbours(c1);
      const std::uint32_t k1 = class_of(c1);
      for (std::size_t k = n1.first; k < n1.second; ++k) {
        const CubeCode c2 = upper[k] % half;
        ++examined;
        const std::uint32_t k2 = class_of(c2);
        if (k1 == k2 || !checked.insert((std::uint64_t{k1} << 32) | k2).second) continue;
        CubeCode c3 = 0;
        if (!includes(n1, neighbours(c2), &c3)) {
          Witness w;
          w.configs = {lower.codec().decode(c1), lower.codec().decode(c2), lower.codec().decode(c3)};
          auto v = Verdict::fail("glueing", l, "[c1,c2] and [c2,c3] are cubes but [c1,c3] is not", std::move(w));
          v.examined = examined;
          return v;
        }
      }
    }
  }
  return Verdict::pass("glueing", up_to, examined);
}

NilspaceCertificate nilspace_degree(const FiniteCubespace& x) {
  NilspaceCertificate cert;
  cert.lmax_checked = x.lmax();
  auto inv = check_cube_invariance(x);
  cert.verdicts.push_back(inv);
  auto fib = check_fibrant(x, x.lmax());
  cert.verdicts.push_back(fib);
  for (int t = 0; t <= x.lmax(); ++t)
    if (check_ergodic(x, t).passed) cert.ergodic_level = t;
  std::optional<int> degree;
  for (int s = 0; s + 1 <= x.lmax(); ++s) {
    auto u = check_uniqueness(x, s + 1);
    cert.verdicts.push_back(u);
    if (u.passed) {
      degree = s;
      break;
    }
  }
  if (!inv.passed) {
    cert.reason = "not cube invariant";
  } else if (!fib.passed) {
    cert.reason = "not fibrant up to lmax";
  } else if (!degree) {
    cert.reason = "no (s+1)-uniqueness for s + 1 <= lmax";
  } else {
    cert.is_nilspace = true;
    cert.degree = degree;
  }
  return cert;
}

bool replay_failure(const FiniteCubespace& x, const Verdict& v) {
  if (v.passed || !v.witness) return false;
  const Witness& w = *v.witness;
  if (v.check == "invariance") {
    if (w.configs.size() != 1 || !w.morphism) return false;
    return x.contains(w.configs[0]) && !x.contains(apply_morphism(w.configs[0], *w.morphism));
  }
  if (v.check == "ergodic") return w.configs.size() == 1 && !x.contains(w.configs[0]);
  if (v.check == "fibrant") {
    if (!w.corner) return false;
    try {
      return complete_corner(x, *w.corner).empty();
    } catch (const InputError&) {
      return false;
    }
  }
  if (v.check == "uniqueness") {
    if (w.configs.size() != 2) return false;
    const auto& a = w.configs[0];
    const auto& b = w.configs[1];
    return x.contains(a) && x.contains(b) && a != b && corner_of(a) == corner_of(b);
  }
  if (v.check == "glueing") {
    if (w.configs.size() != 3) return false;
    const auto& c = w.configs;
    const int axis = c[0].dim + 1;
    return x.contains(concatenate(c[0], c[1], axis)) && x.contains(concatenate(c[1], c[2], axis)) &&
           !x.contains(concatenate(c[0], c[2], axis));
  }
  return false;
}

}  // namespace nilkit
