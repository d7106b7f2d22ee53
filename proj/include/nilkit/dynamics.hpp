#pragma once

// Finite dynamical systems: dynamical cubes of a group action, the quotient
// by RP^s, descent of the action through fibrations and the maximality of
// the RP^s factor among candidate factors.

#include <memory>
#include <optional>
#include <vector>

#include "nilkit/constructions.hpp"
#include "nilkit/map.hpp"
#include "nilkit/translations.hpp"

namespace nilkit {

class DynamicalSystem {
 public:
  DynamicalSystem(GroupAction action, int lmax);

  const GroupAction& action() const { return action_; }
  int lmax() const { return lmax_; }
  /// finite minimality: the action is transitive
  bool minimal() const { return action_.transitive(); }
  /// Dynamical cubes, built on first use.
  const SpacePtr& cubes() const;

 private:
  GroupAction action_;
  int lmax_;
  mutable SpacePtr cubes_;
};

/// The action of H on one of its orbits (points renumbered in order).
GroupAction restrict_action(const GroupAction& act, const std::vector<PointId>& orbit);

struct RpQuotient {
  RpRelation rp;
  SpacePtr space;           // Q = X / RP^s with the images of dynamical cubes
  CubespaceMap map;         // X -> Q
  GroupAction induced;      // H on Q
  NilspaceCertificate certificate;
  Verdict degree;           // nilspace of degree <= s
  Verdict ergodic;
  Verdict translations;     // every h is a 1-translation of Q
};

/// Needs a minimal system with s+1 <= lmax. Throws InputError
/// "dynamics.NotMinimal" and, if RP^s is not an equivalence,
/// "dynamics.NotEquivalence".
RpQuotient rp_quotient(const DynamicalSystem& sys, int s);

/// rp_quotient on every orbit of a non-transitive action.
struct ComponentQuotient {
  std::vector<PointId> orbit;
  RpQuotient quotient;
};
std::vector<ComponentQuotient> rp_quotient_components(const DynamicalSystem& sys, int s);

/// The action of H on Y with h_Y o phi = phi o h. Each h must be a
/// 1-translation of phi's source (InputError "dynamics.NotTranslation").
/// Throws DescentError "dynamics.NoDescent" with witness (h, y) otherwise.
GroupAction descend_action(const GroupAction& act, const CubespaceMap& phi);

struct MaximalityReport {
  Verdict equivariant;  // psi(h x) = h psi(x)
  Verdict candidate;    // RP^s of (H, Z) is trivial
  Verdict morphism;     // psi maps dynamical (s+1)-cubes to dynamical cubes
  Verdict refines;      // RP^s(X) inside ker psi
  bool equal = false;   // RP^s(X) == ker psi
  bool passed() const { return equivariant.passed && candidate.passed && morphism.passed && refines.passed; }
};

/// Checks that the candidate factor psi: (H, X) -> (H, Z) factors through
/// X / RP^s. Throws InputError "dynamics.NotEquivariant" when psi does not
/// intertwine the actions or is not onto.
MaximalityReport maximality_check(const DynamicalSystem& sys, int s, const GroupAction& z,
                                  const std::vector<PointId>& psi);

}  // namespace nilkit
