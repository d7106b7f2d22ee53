#include "nilkit/relation.hpp"

#include <numeric>
#include <unordered_map>

namespace nilkit {

EquivRelation EquivRelation::from_labels(const std::vector<std::uint32_t>& labels) {
  EquivRelation e;
  e.class_of_.assign(labels.size(), 0);
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto [it, fresh] = renumber.try_emplace(labels[x], static_cast<std::uint32_t>(e.classes_.size()));
    if (fresh) e.classes_.emplace_back();
    e.class_of_[x] = it->second;
    e.classes_[it->second].push_back(static_cast<PointId>(x));
  }
  return e;
}

EquivRelation EquivRelation::diagonal(PointId n) {
  std::vector<std::uint32_t> l(n);
  std::iota(l.begin(), l.end(), 0u);
  return from_labels(l);
}

EquivRelation EquivRelation::full(PointId n) { return from_labels(std::vector<std::uint32_t>(n, 0)); }

bool EquivRelation::refines(const EquivRelation& coarser) const {
  if (coarser.size() != size()) return false;
  for (const auto& c : classes_)
    for (PointId x : c)
      if (coarser.class_of(x) != coarser.class_of(c.front())) return false;
  return true;
}

std::uint64_t PairRelation::pair_count() const {
  std::uint64_t k = 0;
  for (auto b : bits_) k += b;
  return k;
}

Verdict check_equivalence(const PairRelation& r) {
  const PointId n = r.size();
  for (PointId x = 0; x < n; ++x)
    if (!r.holds(x, x)) {
      Witness w;
      w.ints = {x};
      return Verdict::fail("equivalence", 0, "not reflexive", std::move(w));
    }
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (r.holds(x, y) && !r.holds(y, x)) {
        Witness w;
        w.ints = {x, y};
        return Verdict::fail("equivalence", 0, "not symmetric", std::move(w));
      }
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y) {
      if (!r.holds(x, y)) continue;
      for (PointId z = 0; z < n; ++z)
        if (r.holds(y, z) && !r.holds(x, z)) {
          Witness w;
          w.ints = {x, y, z};
          return Verdict::fail("equivalence", 0, "not transitive", std::move(w));
        }
    }
  return Verdict::pass("equivalence", 0, static_cast<std::uint64_t>(n) * n);
}

EquivRelation equivalence_closure(const PairRelation& r) {
  const PointId n = r.size();
  std::vector<PointId> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](PointId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (PointId x = 0; x < n; ++x)
    for (PointId y = 0; y < n; ++y)
      if (r.holds(x, y)) {
        auto a = find(x), b = find(y);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::uint32_t> labels(n);
  for (PointId x = 0; x < n; ++x) labels[x] = find(x);
  return EquivRelation::from_labels(labels);
}

PairRelation to_pairs(const EquivRelation& e) {
  PairRelation r(e.size());
  for (const auto& c : e.classes())
    for (PointId x : c)
      for (PointId y : c) r.set(x, y);
  return r;
}

}  // namespace nilkit
