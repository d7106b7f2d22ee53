#pragma once

// Fibrations between nilspaces of a common degree s: shadows on the
// (s-1)-th canonical factors, horizontal / vertical classification, the
// vertical-then-horizontal decomposition and factoring through fibres.

#include <optional>
#include <string>
#include <vector>

#include "nilkit/factors.hpp"
#include "nilkit/map.hpp"

namespace nilkit {

/// X together with pi = pi_{s-1}: X -> pi(X). A space of lower degree is
/// treated as a degree-s space with the same cubes.
struct TopStructure {
  SpacePtr space;
  int s = 1;
  EquivRelation relation;  // ~_{s-1}
  SpacePtr base;           // pi(X)
  std::vector<PointId> pi;

  /// Needs s >= 1 and s <= lmax.
  static TopStructure of(const SpacePtr& x, int s);
  bool same_fibre(PointId a, PointId b) const { return pi[a] == pi[b]; }
};

/// Degree of a nilspace, or InputError "fibrations.NotNilspace".
int require_degree(const FiniteCubespace& x);

struct Shadow {
  TopStructure source;
  TopStructure target;
  CubespaceMap psi;  // pi(X) -> pi(Y), morphism and fibration flags set
};

/// The map psi with pi o f = psi o pi. Throws InputError
/// "fibrations.NoShadow" if pi o f is not constant on pi-fibres.
Shadow shadow(const CubespaceMap& f, int s);

enum class FibrationKind { Horizontal, Vertical, Both, Neither };
const char* to_string(FibrationKind k);

struct Classification {
  int s = 1;
  FibrationKind kind = FibrationKind::Neither;
  // horizontal: (1) injective on pi-fibres, (2) bijective between matching
  // pi-fibres, (5) f(x1) = f(x2) and corner(x1;x2) a cube force x1 = x2
  Verdict horizontal1, horizontal2, horizontal5;
  // vertical: (1) pi(f x1) = pi(f x2) forces pi x1 = pi x2, (2) the shadow
  // is an isomorphism, (5) f(x1) = f(x2) forces corner(x1;x2) to be a cube
  Verdict vertical1, vertical2, vertical5;
  bool consistent = true;  // equivalent characterisations agree
};

/// Classifies a fibration between nilspaces of degree s (the fibration
/// flag is checked first; InputError "fibrations.NotFibration" otherwise).
/// Sets f.horizontal and f.vertical.
Classification classify(CubespaceMap& f, int s);

struct Decomposition {
  EquivRelation relation;  // x1 ~ x2 iff f(x1) = f(x2) and corner^s(x1;x2) is a cube
  Verdict equivalence;
  SpacePtr middle;
  CubespaceMap vertical;    // X -> Z
  CubespaceMap horizontal;  // Z -> Y
  Classification vertical_class;
  Classification horizontal_class;
  bool composes = false;    // horizontal o vertical == f pointwise
};

/// f = f_h o f_v through Z = X / ~ with the relation above. Throws
/// InputError "fibrations.NotEquivalence" if the relation is not an
/// equivalence (which a pair of degree-s nilspaces cannot produce).
Decomposition decompose(CubespaceMap& f, int s);

/// The map Y -> Z with g o f_yx = f_zx; f_yx must be onto and its fibres
/// must lie in fibres of f_zx. Throws InputError "fibrations.NoRefinement"
/// with the offending point of Y in the message otherwise.
CubespaceMap universal_factor(const CubespaceMap& f_yx, const CubespaceMap& f_zx);

}  // namespace nilkit
