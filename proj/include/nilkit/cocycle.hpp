#pragma once

// Group-valued functions on cubespaces, their derivatives, cocycles, the
// discrepancy of a configuration, the functional equation
// rho = d^l f + rho~ o phi, straight sections and straight classes.

#include <cstdint>
#include <optional>
#include <vector>

#include "nilkit/factors.hpp"
#include "nilkit/fibrations.hpp"
#include "nilkit/linear.hpp"
#include "nilkit/map.hpp"

namespace nilkit {

struct GroupValuedFunction {
  SpacePtr domain;
  FiniteAbelianGroup group;
  std::vector<Element> values;

  GroupValuedFunction() = default;
  /// Throws InputError "cocycle.BadFunction" on a size or range mismatch.
  GroupValuedFunction(SpacePtr domain, FiniteAbelianGroup group, std::vector<Element> values);
  Element operator()(PointId x) const { return values[x]; }
};

/// A function on C^l(X), indexed like domain->cubes(l).codes().
struct Cocycle {
  int level = 0;
  SpacePtr domain;
  FiniteAbelianGroup group;
  std::vector<Element> values;
  StatusFlag verified;

  Cocycle() = default;
  /// Throws InputError "cocycle.BadCocycle" on a size or range mismatch.
  Cocycle(int level, SpacePtr domain, FiniteAbelianGroup group, std::vector<Element> values);
  /// Throws InputError "cocycle.NotACube" off C^l.
  Element operator()(const Configuration& c) const;
  Element at_code(CubeCode code) const;
};

Cocycle zero_cocycle(SpacePtr x, const FiniteAbelianGroup& a, int l);

/// d^l f(c) = sum over w of (-1)^|w| f(c(w)); the result is verified.
Cocycle derivative(const GroupValuedFunction& f, int l);

/// Additivity rho([c1,c3]) = rho([c1,c2]) + rho([c2,c3]) along every axis,
/// then rho([c0,c0]) = 0 and rho([c1,c0]) = -rho([c0,c1]). Witness: the
/// three (l-1)-configurations (c1, c2, c3) and the axis. Records the flag.
Verdict is_cocycle(Cocycle& rho);

/// A degree-s nilspace with its top structure group and pi = pi_{s-1}.
struct NilspaceTop {
  SpacePtr space;
  int s = 1;
  StructureGroup group;
  TopStructure top;

  PointId base_points() const { return top.base->points(); }
};

/// Needs 1 <= s and s+1 <= lmax.
NilspaceTop nilspace_top(const SpacePtr& x, int s);

/// f.c: the structure group acting vertex by vertex.
Configuration shift(const NilspaceTop& t, const std::vector<Element>& f, const Configuration& c);

/// The a with [a] at vertex 0 acting on c giving an (s+1)-cube. Throws
/// InputError "cocycle.BaseNotCube" when pi(c) is not a cube, and
/// StructureError "factors.NotGroup" if no such a exists.
Element discrepancy(const NilspaceTop& t, const Configuration& c);

struct FunctionalSolution {
  bool feasible = false;
  GroupValuedFunction f;
  std::optional<Cocycle> rho_tilde;
  GroupSolution raw;        // unknowns: f(x) for x in X, then rho~(d) for d in C^l(Y)
  bool round_trip = false;  // d^l f + rho~ o phi == rho, re-evaluated
  Verdict rho_tilde_cocycle;
};

/// Exact solution of rho = d^l f + rho~ o phi over the values of rho.
/// Infeasible is a result, not an error; raw.witness then names an
/// inconsistent combination of equations (one per cube of X).
/// Throws InputError "cocycle.NotCocycle" or "fibrations.NotFibration".
FunctionalSolution solve_functional(CubespaceMap& phi, Cocycle& rho);

/// Every f appearing in some solution, for small solution sets.
std::vector<std::vector<Element>> functional_solutions(const FunctionalSolution& sol);

/// A map from a union of psi-fibres U of pi(X) into X with pi o sigma = id.
struct Section {
  static constexpr PointId kNone = UINT32_MAX;
  std::vector<PointId> value;  // indexed by points of pi(X); kNone off U
  StatusFlag straight;

  bool defined(PointId b) const { return value[b] != kNone; }
};

/// The least point of every pi-fibre.
Section least_section(const NilspaceTop& t);

/// Checks pi o sigma = id and D(sigma(c1)) = D(sigma(c2)) for (s+1)-cubes of
/// pi(X) inside U with psi(c1) = psi(c2). Records the flag.
Verdict check_straight(const NilspaceTop& t, const CubespaceMap& psi, Section& sigma);

struct Straightening {
  std::optional<Section> section;  // empty when infeasible
  Cocycle rho;                     // c -> D(sigma0(c)) on C^{s+1}(U)
  FunctionalSolution solution;
  std::vector<Element> correction; // f on pi(X), zero off U
};

/// x -> f(x).sigma0(x) with f from the functional equation for the
/// discrepancy cocycle of sigma0 along psi restricted to U.
Straightening straighten_section(const NilspaceTop& t, CubespaceMap& psi, const Section& sigma0);

struct StraightClass {
  PointId base = 0;             // b' in B2
  std::vector<PointId> points;  // sorted
};

/// One point on each pi-fibre over psi^{-1}(b') and every (s+1)-configuration
/// into the set whose image is a cube is itself a cube.
Verdict check_straight_class(const NilspaceTop& t, const CubespaceMap& psi, const StraightClass& d);

struct StraightClassReport {
  std::vector<StraightClass> classes;
  Verdict partition;   // every point in exactly one class
  Verdict translates;  // classes over a common base are A-translates
  std::uint64_t transversals_examined = 0;
};

/// Every straight psi-class, by a fibre-by-fibre transversal search.
StraightClassReport straight_classes(const NilspaceTop& t, const CubespaceMap& psi);

/// The classes a.sigma(psi^{-1}(b')) of a straight section defined on all
/// of pi(X).
std::vector<StraightClass> section_classes(const NilspaceTop& t, const CubespaceMap& psi, const Section& sigma);

struct StraightQuotient {
  SpacePtr space;
  CubespaceMap phi;            // X -> Y
  Classification classification;
  Verdict shadow_matches;      // shadow(phi) = psi up to an isomorphism pi(Y) -> B2
  std::vector<PointId> base_iso;  // pi(Y) -> B2
  Verdict structure_group;     // top structure group of Y has the invariants of A
};

/// Y = X / classes. Throws InputError "cocycle.NotPartition" unless the
/// classes partition X.
StraightQuotient quotient_by_straight_classes(const NilspaceTop& t, CubespaceMap& psi,
                                              const std::vector<StraightClass>& classes);

/// The subcubespace on `subset` (sorted): cubes with every vertex in it,
/// renumbered. old_of_new gives the original point of each new one.
struct InducedSubspace {
  FiniteCubespace space;
  std::vector<PointId> old_of_new;
};
InducedSubspace induced_subspace(const FiniteCubespace& x, const std::vector<PointId>& subset);

}  // namespace nilkit
