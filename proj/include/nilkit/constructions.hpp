#pragma once

// The standard cubespaces: Host-Kra cube groups and the nilspaces on G/Gamma
// they induce, the alternating-sum spaces D_s(A), and dynamical cubes of a
// finite group action.

#include <cstdint>
#include <optional>
#include <vector>

#include "nilkit/cube.hpp"
#include "nilkit/cubespace.hpp"
#include "nilkit/group.hpp"
#include "nilkit/relation.hpp"

namespace nilkit {

/// A left action of a finite group on {0..n-1}; table[h * n + x] = h.x.
class GroupAction {
 public:
  GroupAction() = default;
  /// Checks identity and compatibility; throws InputError
  /// "constructions.NotAnAction" otherwise.
  GroupAction(FiniteGroup group, PointId points, std::vector<PointId> table);

  const FiniteGroup& group() const { return group_; }
  PointId points() const { return n_; }
  PointId act(Element h, PointId x) const { return table_[static_cast<std::size_t>(h) * n_ + x]; }
  const std::vector<PointId>& table() const { return table_; }
  /// h as a permutation of the points
  std::vector<PointId> permutation(Element h) const;
  bool transitive() const { return transitive_; }
  /// Orbits of the action, numbered by least point.
  EquivRelation orbits() const;

  friend bool operator==(const GroupAction& a, const GroupAction& b) {
    return a.group_ == b.group_ && a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup group_;
  PointId n_ = 0;
  std::vector<PointId> table_;
  bool transitive_ = false;
};

/// G acting on itself by left multiplication.
GroupAction left_translation(const FiniteGroup& g);

/// G acting on the left cosets of `gamma`; cosets are numbered by their
/// least element and `representatives` receives those elements.
GroupAction coset_action(const FiniteGroup& g, const Subgroup& gamma,
                         std::vector<Element>* representatives = nullptr);

/// G acting on a set through a homomorphism into a group acting there.
GroupAction pullback_action(const FiniteGroup& g, const std::vector<Element>& hom, const GroupAction& act);

struct HKGenerator {
  Face face;
  Element g = 0;
  int level = 0;  // filtration level used (= codimension)
};

/// HK^l(G_.) as a subgroup of G^{2^l}; elements are configuration codes over
/// the |G| group elements, sorted.
struct HKCubeGroup {
  FiniteGroup group;
  Filtration filtration;
  int dim = 0;
  std::vector<CubeCode> elements;
  std::vector<HKGenerator> generators;

  ConfigCodec codec() const { return ConfigCodec(group.order(), dim); }
  std::size_t order() const { return elements.size(); }
  bool contains(const Configuration& c) const;
};

/// Closure of the [g]_F with codim F = i and g in a generating set of G_i,
/// for 0 <= i <= l.
HKCubeGroup hk_cube_group(const FiniteGroup& g, const Filtration& filtration, int dim);

/// Report on the Gamma-compatibility of a filtration: |Gamma n G_i| per level.
std::vector<std::uint32_t> gamma_levels(const Filtration& filtration, const Subgroup& gamma);

/// Cubespace on the left cosets G/Gamma (numbered as in coset_action) whose
/// l-cubes are w -> g(w) x Gamma for g in HK^l(G_.).
FiniteCubespace hk_nilspace(const FiniteGroup& g, const Filtration& filtration, const Subgroup& gamma, int lmax);

/// The degree-s filtration A_0 = ... = A_s = A, A_{s+1} = 0.
Filtration abelian_filtration(const FiniteGroup& a, int s);

/// D_s(A): the configurations whose alternating sum along every morphism
/// {0,1}^{s+1} -> {0,1}^l vanishes. Points are the elements of A.
FiniteCubespace standard_nilspace(const FiniteAbelianGroup& a, int s, int lmax);

/// Dynamical cubes: the orbit of the constant configurations under the
/// group generated by the [h]_F, F a hyperface and h in H.
FiniteCubespace dynamical_cubespace(const GroupAction& act, int lmax);

struct RpRelation {
  int s = 0;
  PairRelation pairs;        // (x,y) with corner(x;y) a dynamical (s+1)-cube
  Verdict equivalence;       // reflexive, symmetric, transitive
  Verdict invariance;        // (x,y) related implies (hx,hy) related
  std::optional<EquivRelation> relation;  // set when `equivalence` passed
};

/// RP^s of the action. `cubes` may supply a dynamical cubespace with
/// lmax >= s+1; otherwise one is built.
RpRelation rp_relation(const GroupAction& act, int s, const FiniteCubespace* cubes = nullptr);

/// Orbit of `seeds` (l-configuration codes over n points) under the maps
/// c -> [p]_F.c, each generator being a face and a permutation of the points.
struct FacePermutation {
  Face face;
  std::vector<PointId> perm;
};
std::vector<CubeCode> face_orbit(PointId points, int dim, const std::vector<CubeCode>& seeds,
                                 const std::vector<FacePermutation>& generators);

}  // namespace nilkit
