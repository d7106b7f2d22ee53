#pragma once

// Binary relations on {0..n-1} and the equivalence relations (partitions)
// they generate.

#include <cstdint>
#include <optional>
#include <vector>

#include "nilkit/cube.hpp"
#include "nilkit/cubespace.hpp"

namespace nilkit {

/// A partition of {0..n-1}. Classes are numbered by their least element.
class EquivRelation {
 public:
  EquivRelation() = default;
  /// Any labelling of the points; labels are renumbered canonically.
  static EquivRelation from_labels(const std::vector<std::uint32_t>& labels);
  static EquivRelation diagonal(PointId n);
  static EquivRelation full(PointId n);

  PointId size() const { return static_cast<PointId>(class_of_.size()); }
  std::uint32_t class_count() const { return static_cast<std::uint32_t>(classes_.size()); }
  std::uint32_t class_of(PointId x) const { return class_of_[x]; }
  const std::vector<PointId>& members(std::uint32_t k) const { return classes_[k]; }
  const std::vector<std::vector<PointId>>& classes() const { return classes_; }
  const std::vector<std::uint32_t>& labels() const { return class_of_; }
  bool related(PointId x, PointId y) const { return class_of_[x] == class_of_[y]; }

  bool is_diagonal() const { return class_count() == size(); }
  bool is_full() const { return class_count() <= 1; }
  /// Every class of *this lies inside a class of `coarser`.
  bool refines(const EquivRelation& coarser) const;

  friend bool operator==(const EquivRelation& a, const EquivRelation& b) { return a.class_of_ == b.class_of_; }

 private:
  std::vector<std::uint32_t> class_of_;
  std::vector<std::vector<PointId>> classes_;
};

/// An arbitrary relation as an n x n boolean matrix.
class PairRelation {
 public:
  explicit PairRelation(PointId n = 0) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}

  PointId size() const { return n_; }
  bool holds(PointId x, PointId y) const { return bits_[static_cast<std::size_t>(x) * n_ + y] != 0; }
  void set(PointId x, PointId y) { bits_[static_cast<std::size_t>(x) * n_ + y] = 1; }
  std::uint64_t pair_count() const;

  friend bool operator==(const PairRelation&, const PairRelation&) = default;

 private:
  PointId n_;
  std::vector<std::uint8_t> bits_;
};

/// Reflexivity, symmetry and transitivity, with witness ints (x), (x,y) or
/// (x,y,z) on failure.
Verdict check_equivalence(const PairRelation& r);
/// The smallest equivalence relation containing r.
EquivRelation equivalence_closure(const PairRelation& r);
PairRelation to_pairs(const EquivRelation& e);

}  // namespace nilkit
