#pragma once

// Exact linear systems over Z/n and over finite abelian groups. Each
// modulus is split into prime powers; over Z/p^k the matrix is brought to
// diagonal form by pivoting on entries of least p-valuation.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nilkit/group.hpp"

namespace nilkit {

/// Sparse row: (variable, integer coefficient).
using LinearRow = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/// lambda . M = 0 but lambda . rhs != 0 modulo `modulus`; the combination
/// names original equations.
struct Infeasibility {
  std::uint32_t coordinate = 0;  // cyclic factor of A (0 for Z/n systems)
  std::uint64_t modulus = 0;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> combination;
  std::uint64_t value = 0;       // lambda . rhs mod modulus
};

/// Solutions over Z/n: x + span(kernel). The solution count is
/// prod p^e over count_factors.
struct ModSolution {
  bool feasible = false;
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> x;
  std::vector<std::vector<std::uint64_t>> kernel;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> count_factors;  // (p, e)
  std::optional<Infeasibility> witness;
};

ModSolution solve_mod(std::uint64_t n, std::uint32_t vars, const std::vector<LinearRow>& rows,
                      const std::vector<std::uint64_t>& rhs);

/// The same over a finite abelian group A: unknowns and right-hand sides
/// are elements of A, coefficients are integers.
struct GroupSolution {
  bool feasible = false;
  std::vector<Element> x;
  std::vector<std::vector<Element>> kernel;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> count_factors;
  std::optional<Infeasibility> witness;

  /// log2 of the number of solutions
  double log2_count() const;
};

GroupSolution solve_over(const FiniteAbelianGroup& a, std::uint32_t vars, const std::vector<LinearRow>& rows,
                         const std::vector<Element>& rhs);

/// Every solution, by closing x under the kernel generators. Guarded.
std::vector<std::vector<Element>> enumerate_solutions(const FiniteAbelianGroup& a, const GroupSolution& sol);

}  // namespace nilkit
