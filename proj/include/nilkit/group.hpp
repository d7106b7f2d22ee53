#pragma once

// Finite groups given by multiplication tables, their subgroups,
// filtrations, quotients and the invariant-factor decomposition of finite
// abelian groups.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilkit/error.hpp"

namespace nilkit {

using Element = std::uint32_t;

inline constexpr std::uint32_t kMaxGroupOrder = 10000;

/// Raised by validate_group. The witness holds the offending elements
/// (a triple for associativity, a single element for inverses).
class NotAGroup : public InputError {
 public:
  NotAGroup(const std::string& reason, std::vector<Element> witness)
      : InputError("group.NotAGroup", reason), witness_(std::move(witness)) {}
  const std::vector<Element>& witness() const { return witness_; }

 private:
  std::vector<Element> witness_;
};

class FiniteGroup {
 public:
  FiniteGroup() = default;

  std::uint32_t order() const { return n_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  /// a^-1 b^-1 a b
  Element commutator(Element a, Element b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Element power(Element a, std::uint64_t k) const;
  std::uint32_t element_order(Element a) const;
  bool is_abelian() const;
  /// First non-commuting pair, if any.
  std::optional<std::pair<Element, Element>> noncommuting_pair() const;

  /// Row-major multiplication table.
  const std::vector<Element>& table() const { return table_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  friend FiniteGroup validate_group(std::uint32_t, std::vector<Element>);
  std::uint32_t n_ = 0;
  std::vector<Element> table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
};

/// Verifies the table is a group law: entries in range, two-sided identity,
/// inverses and associativity (Light's test over a generating set).
/// Throws NotAGroup with a witness on failure.
FiniteGroup validate_group(std::uint32_t order, std::vector<Element> table);

/// A subgroup as a sorted element set.
class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(std::vector<Element> elements);

  std::uint32_t order() const { return static_cast<std::uint32_t>(elements_.size()); }
  const std::vector<Element>& elements() const { return elements_; }
  bool contains(Element a) const;
  bool is_subset_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  std::vector<Element> elements_;
};

Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);

/// Smallest subgroup containing the generators (breadth-first closure).
Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> generators);
/// A small generating set of h, chosen greedily in element order.
std::vector<Element> generating_set(const FiniteGroup& g, const Subgroup& h);
/// True when `elements` is closed under product and inverse and contains e.
bool is_subgroup(const FiniteGroup& g, std::span<const Element> elements);

/// [A, B], the subgroup generated by all a^-1 b^-1 a b.
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

class Filtration {
 public:
  Filtration() = default;
  /// levels = G_0, G_1, ..., G_{s+1} with G_{s+1} trivial.
  Filtration(std::vector<Subgroup> levels, bool proper);

  /// s
  int degree() const { return static_cast<int>(levels_.size()) - 2; }
  bool proper() const { return proper_; }
  /// G_i, trivial for i > s+1.
  const Subgroup& level(int i) const;
  const std::vector<Subgroup>& levels() const { return levels_; }

 private:
  std::vector<Subgroup> levels_;
  bool proper_ = false;
};

/// Raised by validate_filtration and lower_central_series.
class FiltrationError : public InputError {
 public:
  FiltrationError(const std::string& code, const std::string& reason, std::vector<std::int64_t> witness)
      : InputError(code, reason), witness_(std::move(witness)) {}
  const std::vector<std::int64_t>& witness() const { return witness_; }

 private:
  std::vector<std::int64_t> witness_;
};

/// Terms G = H_1, H_2 = [G, H_1], ... of the lower central series, stopping
/// at the first repeated term (the trivial group when G is nilpotent).
std::vector<Subgroup> lower_central_terms(const FiniteGroup& g);

/// G_0 = G_1 = G, G_{i+1} = [G, G_i]; degree = nilpotency class.
/// Throws FiltrationError "group.NotNilpotent" if the series stalls above {e}.
Filtration lower_central_series(const FiniteGroup& g);

/// Checks chain = (G_0, ..., G_{s+1}): subgroups, G_0 = G, descending,
/// G_{s+1} = {e} and [G_i, G_j] within G_{i+j}. Error codes:
/// group.NotSubgroup, group.NotDescending, group.BracketViolation
/// (witness i, j, a, b).
Filtration validate_filtration(const FiniteGroup& g, const std::vector<std::vector<Element>>& chain);

struct Quotient {
  FiniteGroup group;
  std::vector<Element> projection;       // element of G -> coset index
  std::vector<Element> representatives;  // coset index -> least element
};

/// G/N with cosets ordered by least representative. Throws
/// FiltrationError "group.NotNormal" with witness (g, n) when g n g^-1 is not in N.
Quotient quotient_group(const FiniteGroup& g, const Subgroup& n);

/// A finite abelian group with an explicit isomorphism to
/// Z/n_1 x ... x Z/n_r, n_1 | n_2 | ... | n_r.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  const FiniteGroup& group() const { return group_; }
  std::uint32_t order() const { return group_.order(); }
  const std::vector<std::uint32_t>& invariants() const { return invariants_; }
  /// generator of the i-th cyclic factor
  const std::vector<Element>& generators() const { return generators_; }

  Element zero() const { return group_.identity(); }
  Element add(Element a, Element b) const { return group_.mul(a, b); }
  Element neg(Element a) const { return group_.inv(a); }
  Element sub(Element a, Element b) const { return group_.mul(a, group_.inv(b)); }
  Element times(Element a, std::int64_t k) const;

  /// coordinates of a in the cyclic decomposition
  const std::vector<std::uint32_t>& coordinates(Element a) const { return coords_[a]; }
  Element from_coordinates(std::span<const std::uint32_t> t) const;

 private:
  friend FiniteAbelianGroup abelian_invariants(const FiniteGroup&);
  FiniteGroup group_;
  std::vector<std::uint32_t> invariants_;
  std::vector<Element> generators_;
  std::vector<std::vector<std::uint32_t>> coords_;
  std::vector<Element> by_index_;  // mixed-radix tuple index -> element
};

/// Invariant factors via successive cyclic splittings; the resulting
/// isomorphism is checked to be a bijective homomorphism. Throws
/// FiltrationError "group.NotAbelian" with a non-commuting witness pair.
FiniteAbelianGroup abelian_invariants(const FiniteGroup& a);

// Standard sources.
FiniteGroup cyclic_group(std::uint32_t n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Dihedral group of order 2m: element r^k s^f is index k + m f.
FiniteGroup dihedral_group(std::uint32_t m);
/// Permutation group generated by the given permutations of {0..k-1};
/// element 0 is the identity and the rest follow in sorted permutation order.
FiniteGroup permutation_group(const std::vector<std::vector<std::uint32_t>>& generators,
                              std::vector<std::vector<std::uint32_t>>* elements = nullptr);
FiniteGroup symmetric_group(std::uint32_t k);
FiniteGroup alternating_group(std::uint32_t k);
FiniteAbelianGroup abelian_product(const std::vector<std::uint32_t>& cyclic_orders);

/// Some isomorphism G -> H (as an element map), if one exists.
std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);
/// Is f: G -> H a homomorphism?
bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, std::span<const Element> f);

}  // namespace nilkit
