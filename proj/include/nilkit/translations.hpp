#pragma once

// i-translations of a finite cubespace: membership, brute-force and
// generated groups Aut_i(X), and pushing / pulling along fibrations.

#include <cstdint>
#include <vector>

#include "nilkit/group.hpp"
#include "nilkit/map.hpp"

namespace nilkit {

using Permutation = std::vector<PointId>;

/// Largest space for which translation_group enumerates every bijection.
inline constexpr PointId kTranslationBruteForceCap = 8;

struct Translation {
  SpacePtr space;
  Permutation perm;
  int level = 1;
  int verified_up_to = -1;  // largest l checked
  StatusFlag status;

  PointId operator()(PointId x) const { return perm[x]; }
};

/// [f]_F.c is a cube for every c in C^l and face F of codimension i, for
/// i <= l <= up_to. Witness: the cube c and the face F. Throws InputError
/// "translations.NotBijection" and "translations.BadLevel" (i < 1 or
/// i > up_to or up_to > lmax).
Verdict is_translation(const FiniteCubespace& x, const Permutation& f, int i, int up_to);

/// is_translation with up_to = lmax, packaged.
Translation make_translation(SpacePtr x, Permutation f, int i);

struct TranslationGroup {
  int level = 1;
  bool exhaustive = false;  // false: generated by candidates, possibly a proper subgroup
  std::vector<Permutation> elements;  // elements[k] is group element k
  FiniteGroup group;                  // composition: mul(a, b) = a o b
};

/// Aut_i(X) by brute force over all bijections; needs |X| <= the cap
/// (InputError "translations.CapExceeded" otherwise).
TranslationGroup translation_group(const FiniteCubespace& x, int i);

/// The group generated by those candidates that are i-translations.
TranslationGroup generated_translation_group(const FiniteCubespace& x, int i, const std::vector<Permutation>& candidates);

struct AutFiltration {
  std::vector<TranslationGroup> levels;  // levels[k] = Aut_{k+1}
  Verdict nesting;                        // Aut_{i+1} inside Aut_i
  Verdict commutators;                    // [Aut_i, Aut_j] inside Aut_{i+j}
};

/// Aut_1 .. Aut_lmax by brute force, with the nesting and filtration checks.
AutFiltration translation_filtration(const FiniteCubespace& x);

Permutation compose_perm(const Permutation& g, const Permutation& f);  // g o f
Permutation invert_perm(const Permutation& f);

class DescentError : public Error {
 public:
  DescentError(const std::string& code, const std::string& reason, std::vector<std::int64_t> witness)
      : Error(code, reason), witness_(std::move(witness)) {}
  const std::vector<std::int64_t>& witness() const { return witness_; }

 private:
  std::vector<std::int64_t> witness_;
};

/// The unique f' with f' o phi = phi o f. Throws DescentError
/// "translations.NoDescent" (witness: the point y1 of Y whose fibre is not
/// mapped onto a fibre) when f does not permute the fibres of phi.
Translation push_translation(const CubespaceMap& phi, const Translation& f);

/// Every i-translation f of X with phi o f = f' o phi, by a search with
/// f(x) confined to the fibre over f'(phi(x)). May be empty.
std::vector<Translation> pull_translation(const CubespaceMap& phi, const Translation& fprime);

/// phi(x) = phi(x') forces phi(f(x)) = phi(f(x')). Witness (x, x').
Verdict check_respects_fibres(const CubespaceMap& phi, const Permutation& f);

}  // namespace nilkit
