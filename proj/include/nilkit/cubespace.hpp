#pragma once

// Finite cubespaces with explicitly materialised cube sets, and the axiom
// verifiers: cube invariance, ergodicity, corner completion, uniqueness,
// glueing and nilspace degree.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilkit/cube.hpp"

namespace nilkit {

/// Sorted set of integer-encoded l-configurations.
class CubeSet {
 public:
  CubeSet(PointId points, int dim, std::vector<CubeCode> codes);

  const ConfigCodec& codec() const { return codec_; }
  int dim() const { return codec_.dim(); }
  std::size_t size() const { return codes_.size(); }
  const std::vector<CubeCode>& codes() const { return codes_; }
  CubeCode operator[](std::size_t k) const { return codes_[k]; }

  bool contains(CubeCode code) const;
  bool contains(const Configuration& c) const;
  /// Index range [first, last) of the codes in [low, high].
  std::pair<std::size_t, std::size_t> range(CubeCode low, CubeCode high) const;
  /// Index range of the codes whose leading `digits` vertices equal `prefix`
  /// (prefix given as a base-n number with `digits` digits).
  std::pair<std::size_t, std::size_t> prefix_range(CubeCode prefix, VertexIndex digits) const;

  friend bool operator==(const CubeSet& a, const CubeSet& b) {
    return a.dim() == b.dim() && a.codec_.points() == b.codec_.points() && a.codes_ == b.codes_;
  }

 private:
  ConfigCodec codec_;
  std::vector<CubeCode> codes_;
};

/// A finite cubespace: points 0..n-1 and cube sets C^0..C^lmax.
class FiniteCubespace {
 public:
  /// cubes[l] holds the codes of C^l; they are sorted and deduplicated.
  /// C^0 must consist of every point. Throws InputError on n = 0.
  FiniteCubespace(PointId points, std::vector<std::vector<CubeCode>> cubes);

  PointId points() const { return n_; }
  int lmax() const { return static_cast<int>(sets_.size()) - 1; }
  const CubeSet& cubes(int l) const { return sets_.at(l); }
  bool contains(const Configuration& c) const;

  /// Same points, cube sets truncated to dimension <= l.
  FiniteCubespace truncated(int l) const;

  friend bool operator==(const FiniteCubespace& a, const FiniteCubespace& b) {
    return a.n_ == b.n_ && a.sets_ == b.sets_;
  }

 private:
  PointId n_;
  std::vector<CubeSet> sets_;
};

/// The one-point cubespace (every configuration is a cube).
FiniteCubespace point_cubespace(int lmax);
/// The cubespace in which every configuration is a cube.
FiniteCubespace full_cubespace(PointId points, int lmax);

struct Witness {
  std::vector<Configuration> configs;
  std::optional<Corner> corner;
  std::optional<CubeMorphism> morphism;
  std::optional<Face> face;
  std::vector<std::int64_t> ints;
};

/// Outcome of a single check. `check` names the property, `level` the
/// dimension or degree parameter, `examined` the number of items scanned.
struct Verdict {
  std::string check;
  int level = -1;
  bool passed = true;
  std::string detail;
  std::optional<Witness> witness;
  std::uint64_t examined = 0;

  static Verdict pass(std::string check, int level, std::uint64_t examined = 0) {
    return Verdict{std::move(check), level, true, {}, std::nullopt, examined};
  }
  static Verdict fail(std::string check, int level, std::string detail, Witness w) {
    return Verdict{std::move(check), level, false, std::move(detail), std::move(w), 0};
  }
};

/// Morphisms that generate all cube morphisms between dimensions <= lmax
/// under composition: reflection of w_1, adjacent transpositions, restriction
/// to w_k = 0, merging the last two coordinates, and duplication.
std::vector<CubeMorphism> invariance_generators(int lmax);

/// Closure of every C^k under the generating morphisms. Witness: a cube c
/// and a morphism phi with c o phi missing.
Verdict check_cube_invariance(const FiniteCubespace& x);
/// Same property checked against every morphism from enumerate_morphisms.
Verdict check_cube_invariance_exhaustive(const FiniteCubespace& x);

/// Smallest cube-invariant family over `points` containing the seeds
/// (seeds[l] are l-configurations) with C^0 = all points.
FiniteCubespace invariance_closure(PointId points, int lmax,
                                   const std::vector<std::vector<Configuration>>& seeds);

Verdict check_ergodic(const FiniteCubespace& x, int s);

/// Calls `visit(values, base)` for every l-corner of x in lexicographic
/// order: `values` has 2^l - 1 entries and `base` is the code of the corner
/// completed with point 0, so completions are the codes base..base+n-1.
/// Returning false from `visit` stops the scan. Returns the corner count.
std::uint64_t for_each_corner(const FiniteCubespace& x, int dim,
                              const std::function<bool(std::span<const PointId>, CubeCode)>& visit);

/// Every cube extending the corner. Throws InputError
/// "cubespace.InvalidCorner" if some face w_i = 0 is not a cube.
std::vector<Configuration> complete_corner(const FiniteCubespace& x, const Corner& corner);

/// Corner completion in every dimension 0..up_to.
Verdict check_fibrant(const FiniteCubespace& x, int up_to);
Verdict check_uniqueness(const FiniteCubespace& x, int s);
/// [c1,c2], [c2,c3] in C^l implies [c1,c3] in C^l, for 1 <= l <= up_to.
Verdict check_glueing(const FiniteCubespace& x, int up_to);

struct NilspaceCertificate {
  bool is_nilspace = false;
  std::optional<int> degree;
  int ergodic_level = 0;  // largest t <= lmax with C^t full
  int lmax_checked = 0;
  std::string reason;
  std::vector<Verdict> verdicts;
};

/// Invariance, fibrancy up to lmax and a uniqueness scan; the degree is the
/// least s with (s+1)-uniqueness.
NilspaceCertificate nilspace_degree(const FiniteCubespace& x);

/// Re-runs a failed verdict's witness against x; true when it fails again.
bool replay_failure(const FiniteCubespace& x, const Verdict& v);

}  // namespace nilkit
