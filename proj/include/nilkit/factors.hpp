#pragma once

// Canonical equivalence relations, quotient cubespaces, the factor tower and
// the top structure group with its weak-structure certificate.

#include <cstdint>
#include <optional>
#include <vector>

#include "nilkit/cubespace.hpp"
#include "nilkit/group.hpp"
#include "nilkit/map.hpp"
#include "nilkit/relation.hpp"

namespace nilkit {

struct CanonicalRelation {
  int s = 0;
  EquivRelation relation;   // closure of the generated pairs
  PairRelation generated;   // (x,y) joined by two (s+1)-cubes agreeing off the top
  Verdict transitive;       // were the generated pairs already an equivalence?
};

/// x ~_s y iff two (s+1)-cubes agree off the top vertex and end in x and y.
/// Needs s+1 <= lmax.
CanonicalRelation canonical_relation_report(const FiniteCubespace& x, int s);
EquivRelation canonical_relation(const FiniteCubespace& x, int s);

struct CornerRelation {
  int s = 0;
  PairRelation pairs;  // (x,y) with corner(x;y) an (s+1)-cube
  Verdict equivalence;
  std::optional<EquivRelation> relation;
};
CornerRelation canonical_relation_corner(const FiniteCubespace& x, int s);

struct QuotientSpace {
  FiniteCubespace space;
  std::vector<PointId> projection;  // point -> class index
};

/// Points are the classes of r; the cubes are the images of cubes of x.
QuotientSpace quotient_cubespace(const FiniteCubespace& x, const EquivRelation& r);

struct TowerLevel {
  int t = 0;
  EquivRelation relation;  // ~_t on X
  SpacePtr space;          // pi_t(X)
  CubespaceMap projection; // X -> pi_t(X)
};

struct Tower {
  int degree = 0;
  SpacePtr base;                 // X
  std::vector<TowerLevel> levels;  // t = 0..degree
  std::vector<Verdict> fibration_checks;
};

/// pi_0(X), ..., pi_s(X) for a nilspace X of degree s (determined with
/// nilspace_degree; throws InputError "factors.NotNilspace" otherwise).
/// Every projection is checked to be a fibration up to lmax.
Tower canonical_tower(const SpacePtr& x);

/// Throws with a witness when the Y / approx construction breaks down, which
/// only happens on input that is not a nilspace of the given degree.
class StructureError : public Error {
 public:
  StructureError(const std::string& code, const std::string& reason, std::vector<std::int64_t> witness)
      : Error(code, reason), witness_(std::move(witness)) {}
  const std::vector<std::int64_t>& witness() const { return witness_; }

 private:
  std::vector<std::int64_t> witness_;
};

struct StructureGroup {
  int s = 0;
  FiniteAbelianGroup group;
  PointId points = 0;
  std::vector<PointId> action;  // action[a * n + x] = a.x
  EquivRelation fibers;         // ~_{s-1}
  /// difference[x * n + y] = the a with a.x = y, or UINT32_MAX off-fiber
  std::vector<Element> difference;
  Verdict free;                 // a.x = x only for a = 0
  Verdict orbits;               // orbits are exactly the ~_{s-1} classes

  PointId act(Element a, PointId x) const { return action[static_cast<std::size_t>(a) * points + x]; }
  Element diff(PointId x, PointId y) const { return difference[static_cast<std::size_t>(x) * points + y]; }
};

/// The top structure group of a nilspace x of degree s: the classes of
/// (x,y) ~ (x',y') iff [corner(x;y), corner(x';y')] is an (s+1)-cube on
/// Y = {x ~_{s-1} y}, composed as graphs. Needs s+1 <= lmax.
/// Errors: StructureError "factors.NotEquivalence", "factors.NotGraph",
/// "factors.NotGroup".
StructureGroup structure_group(const FiniteCubespace& x, int s);

/// A_t(X), computed on pi_t(X) as the paper's definition prescribes.
StructureGroup structure_group_at(const Tower& tower, int t);

/// Lemma-style replacement: for l <= min(t+1, up_to), a configuration whose
/// vertices are ~_t-equivalent to those of a cube is a cube.
Verdict check_replacement(const FiniteCubespace& x, int t, int up_to);

struct WeakStructureCertificate {
  int s = 0;
  Verdict item1;                 // orbits = fibres of pi_{s-1}, action free
  std::vector<Verdict> item2;    // one per dimension l = 0..lmax
  std::vector<bool> sampled;     // per dimension: was item 2 sampled?
  Verdict replacement;           // with ~_{s-1} at l <= s
  bool passed() const;
};

/// Checks items 1 and 2 of the weak structure theorem. Item 2 compares each
/// bucket of cubes over one base with its first cube, every bucket at
/// l <= s+1; above that buckets are taken in code order until `sample_limit`
/// cubes are examined and the certificate says so.
WeakStructureCertificate verify_weak_structure(const FiniteCubespace& x, const StructureGroup& a,
                                               std::uint64_t sample_limit = 100000);

}  // namespace nilkit
