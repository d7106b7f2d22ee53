#pragma once

// Point maps between finite cubespaces, with verification flags for the
// morphism and fibration properties.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "nilkit/cubespace.hpp"

namespace nilkit {

enum class Status : std::uint8_t { Unverified, Pass, Fail };

struct StatusFlag {
  Status status = Status::Unverified;
  std::optional<Verdict> verdict;

  bool passed() const { return status == Status::Pass; }
  void record(const Verdict& v) {
    status = v.passed ? Status::Pass : Status::Fail;
    verdict = v;
  }
};

using SpacePtr = std::shared_ptr<const FiniteCubespace>;

inline SpacePtr share(FiniteCubespace x) { return std::make_shared<const FiniteCubespace>(std::move(x)); }

/// A point map X -> Y. The flags are only ever set by the verifiers.
struct CubespaceMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<PointId> map;
  StatusFlag morphism;
  StatusFlag fibration;
  StatusFlag horizontal;
  StatusFlag vertical;

  CubespaceMap() = default;
  /// Throws InputError "fibrations.BadMap" on size or range mismatch.
  CubespaceMap(SpacePtr source, SpacePtr target, std::vector<PointId> map);

  PointId operator()(PointId x) const { return map[x]; }
  Configuration apply(const Configuration& c) const;
  bool injective() const;
  bool surjective() const;
};

CubespaceMap identity_map(SpacePtr x);
/// g o f
CubespaceMap compose(const CubespaceMap& g, const CubespaceMap& f);

/// f o c is a cube of Y for every cube c of X, in dimensions up to
/// min(lmax X, lmax Y). Witness: the offending cube.
Verdict check_morphism(CubespaceMap& f);

/// Relative corner completion in dimensions 0..up_to: for every corner of X
/// and every cube of Y extending its image, some completion in X maps onto
/// it. Witness: the corner and the cube of Y.
Verdict check_fibration(CubespaceMap& f, int up_to);

}  // namespace nilkit
