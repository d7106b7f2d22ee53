#include "nilkit/linear.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "nilkit/error.hpp"

namespace nilkit {

namespace {

using u64 = std::uint64_t;

std::vector<std::pair<u64, u64>> factorize(u64 n) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      u64 e = 0;
      while (n % p == 0) n /= p, ++e;
      out.emplace_back(p, e);
    }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

u64 reduce(std::int64_t v, u64 q) {
  const auto m = static_cast<std::int64_t>(q);
  return static_cast<u64>(((v % m) + m) % m);
}

// inverse of a unit modulo q
u64 inverse(u64 a, u64 q) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(q), nr = static_cast<std::int64_t>(a % q);
  while (nr != 0) {
    const std::int64_t k = r / nr;
    t -= k * nt, std::swap(t, nt);
    r -= k * nr, std::swap(r, nr);
  }
  return reduce(t, q);
}

u64 valuation(u64 a, u64 p) {
  u64 v = 0;
  while (a % p == 0) a /= p, ++v;
  return v;
}

struct PrimePowerResult {
  bool feasible = true;
  std::vector<u64> x;
  std::vector<std::vector<u64>> kernel;
  u64 exponent = 0;  // solution count is p^exponent
  std::optional<Infeasibility> witness;
};

// Diagonalise over Z/p^k. Row combinations stay sparse: every row is its own
// equation plus multiples of at most `rank` pivot rows.
PrimePowerResult solve_prime_power(u64 p, u64 k, std::uint32_t vars, const std::vector<LinearRow>& rows,
                                   const std::vector<u64>& rhs) {
  u64 q = 1;
  for (u64 i = 0; i < k; ++i) q *= p;
  const std::size_t m = rows.size();
  check_guard("linear system", static_cast<u64>(m) * vars + static_cast<u64>(vars) * vars);

  std::vector<std::vector<u64>> a(m, std::vector<u64>(vars, 0));
  std::vector<u64> b(m);
  std::vector<std::vector<std::pair<std::uint32_t, u64>>> combo(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto [j, c] : rows[i]) a[i][j] = (a[i][j] + reduce(c, q)) % q;
    b[i] = rhs[i] % q;
    combo[i] = {{static_cast<std::uint32_t>(i), 1}};
  }
  // x = V y
  std::vector<std::vector<u64>> v(vars, std::vector<u64>(vars, 0));
  for (std::uint32_t j = 0; j < vars; ++j) v[j][j] = 1;

  auto add_combo = [&](std::size_t dst, std::size_t src, u64 t) {
    // combo[dst] -= t * combo[src]; both sorted by row
    const auto& x = combo[dst];
    const auto& y = combo[src];
    std::vector<std::pair<std::uint32_t, u64>> acc;
    acc.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        acc.push_back(x[i++]);
        continue;
      }
      const u64 base = i < x.size() && x[i].first == y[j].first ? x[i++].second : 0;
      const u64 c = (base + q - t * y[j].second % q) % q;
      if (c) acc.emplace_back(y[j].first, c);
      ++j;
    }
    combo[dst] = std::move(acc);
  };

  std::vector<u64> pivot_val;
  std::size_t rank = 0;
  while (rank < m && rank < vars) {
    // entry of least valuation in the remaining block
    u64 best_v = k;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = rank; i < m && best_v > 0; ++i)
      for (std::size_t j = rank; j < vars; ++j)
        if (a[i][j] != 0) {
          const u64 vv = valuation(a[i][j], p);
          if (vv < best_v) {
            best_v = vv, bi = i, bj = j;
            if (vv == 0) break;
          }
        }
    if (best_v == k) break;
    std::swap(a[rank], a[bi]);
    std::swap(b[rank], b[bi]);
    std::swap(combo[rank], combo[bi]);
    if (bj != rank) {
      for (auto& row : a) std::swap(row[rank], row[bj]);
      for (auto& row : v) std::swap(row[rank], row[bj]);
    }
    u64 pp = 1;
    for (u64 i = 0; i < best_v; ++i) pp *= p;
    const u64 uinv = inverse(a[rank][rank] / pp, q);
    for (std::size_t i = rank + 1; i < m; ++i) {
      if (a[i][rank] == 0) continue;
      const u64 t = (a[i][rank] / pp) % q * uinv % q;
      for (std::size_t j = rank; j < vars; ++j) a[i][j] = (a[i][j] + q - t * a[rank][j] % q) % q;
      b[i] = (b[i] + q - t * b[rank] % q) % q;
      add_combo(i, rank, t);
    }
    for (std::size_t j = rank + 1; j < vars; ++j) {
      if (a[rank][j] == 0) continue;
      const u64 t = (a[rank][j] / pp) % q * uinv % q;
      a[rank][j] = 0;
      for (std::uint32_t r = 0; r < vars; ++r) v[r][j] = (v[r][j] + q - t * v[r][rank] % q) % q;
    }
    pivot_val.push_back(best_v);
    ++rank;
  }

  PrimePowerResult out;
  auto fail = [&](std::size_t row, u64 scale) {
    out.feasible = false;
    Infeasibility w;
    w.modulus = q;
    for (auto [r, c] : combo[row])
      if (c * scale % q) w.combination.emplace_back(r, c * scale % q);
    w.value = b[row] * scale % q;
    out.witness = std::move(w);
  };
  std::vector<u64> y(vars, 0);
  for (std::size_t i = 0; i < rank; ++i) {
    u64 pp = 1;
    for (u64 t = 0; t < pivot_val[i]; ++t) pp *= p;
    if (b[i] % pp != 0) {
      fail(i, q / pp);
      return out;
    }
    y[i] = (b[i] / pp) * inverse(a[i][i] / pp, q) % q;
  }
  for (std::size_t i = rank; i < m; ++i)
    if (b[i] != 0) {
      fail(i, 1);
      return out;
    }

  auto image = [&](const std::vector<u64>& yy) {
    std::vector<u64> x(vars, 0);
    for (std::uint32_t r = 0; r < vars; ++r) {
      u64 s = 0;
      for (std::uint32_t j = 0; j < vars; ++j) s = (s + v[r][j] * yy[j]) % q;
      x[r] = s;
    }
    return x;
  };
  out.x = image(y);
  for (std::uint32_t j = 0; j < vars; ++j) {
    u64 gen = 1;
    if (j < rank) {
      if (pivot_val[j] == 0) continue;
      gen = 1;
      for (u64 t = pivot_val[j]; t < k; ++t) gen *= p;
      out.exponent += pivot_val[j];
    } else {
      out.exponent += k;
    }
    std::vector<u64> e(vars, 0);
    e[j] = gen;
    out.kernel.push_back(image(e));
  }
  return out;
}

}  // namespace

ModSolution solve_mod(std::uint64_t n, std::uint32_t vars, const std::vector<LinearRow>& rows,
                      const std::vector<std::uint64_t>& rhs) {
  if (n == 0) throw InputError("linear.BadModulus", "modulus must be positive");
  if (rows.size() != rhs.size()) throw InputError("linear.BadSystem", "row and right-hand side counts differ");
  for (const auto& r : rows)
    for (auto [j, c] : r)
      if (j >= vars) throw InputError("linear.BadSystem", "variable index out of range");
  ModSolution out;
  out.modulus = n;
  out.feasible = true;
  out.x.assign(vars, 0);
  if (n == 1) return out;
  for (auto [p, k] : factorize(n)) {
    u64 q = 1;
    for (u64 i = 0; i < k; ++i) q *= p;
    auto part = solve_prime_power(p, k, vars, rows, rhs);
    if (!part.feasible) {
      out.feasible = false;
      out.x.clear();
      out.kernel.clear();
      out.count_factors.clear();
      out.witness = part.witness;
      return out;
    }
    // idempotent: 1 mod q, 0 mod n/q
    const u64 rest = n / q;
    const u64 e = rest % n * inverse(rest % q, q) % n;
    for (std::uint32_t j = 0; j < vars; ++j) out.x[j] = (out.x[j] + e * part.x[j]) % n;
    for (auto& kv : part.kernel) {
      std::vector<u64> lifted(vars);
      for (std::uint32_t j = 0; j < vars; ++j) lifted[j] = e * kv[j] % n;
      out.kernel.push_back(std::move(lifted));
    }
    if (part.exponent) out.count_factors.emplace_back(p, part.exponent);
  }
  return out;
}

double GroupSolution::log2_count() const {
  double s = 0;
  for (auto [p, e] : count_factors) s += static_cast<double>(e) * std::log2(static_cast<double>(p));
  return s;
}

GroupSolution solve_over(const FiniteAbelianGroup& a, std::uint32_t vars, const std::vector<LinearRow>& rows,
                         const std::vector<Element>& rhs) {
  GroupSolution out;
  out.feasible = true;
  const auto& inv = a.invariants();
  std::vector<std::vector<std::uint32_t>> coords(vars, std::vector<std::uint32_t>(inv.size(), 0));
  std::map<u64, u64> counts;
  for (std::uint32_t i = 0; i < inv.size(); ++i) {
    std::vector<u64> r(rhs.size());
    for (std::size_t e = 0; e < rhs.size(); ++e) r[e] = a.coordinates(rhs[e])[i];
    auto part = solve_mod(inv[i], vars, rows, r);
    if (!part.feasible) {
      out = GroupSolution{};
      out.witness = part.witness;
      out.witness->coordinate = i;
      return out;
    }
    for (std::uint32_t j = 0; j < vars; ++j) coords[j][i] = static_cast<std::uint32_t>(part.x[j]);
    for (const auto& kv : part.kernel) {
      std::vector<Element> g(vars);
      std::vector<std::uint32_t> t(inv.size(), 0);
      for (std::uint32_t j = 0; j < vars; ++j) {
        t[i] = static_cast<std::uint32_t>(kv[j]);
        g[j] = a.from_coordinates(t);
      }
      out.kernel.push_back(std::move(g));
    }
    for (auto [p, e] : part.count_factors) counts[p] += e;
  }
  out.x.resize(vars);
  for (std::uint32_t j = 0; j < vars; ++j) out.x[j] = a.from_coordinates(coords[j]);
  out.count_factors.assign(counts.begin(), counts.end());
  return out;
}

std::vector<std::vector<Element>> enumerate_solutions(const FiniteAbelianGroup& a, const GroupSolution& sol) {
  if (!sol.feasible) return {};
  check_guard("solution set", static_cast<u64>(std::ldexp(1.0, static_cast<int>(std::ceil(sol.log2_count())))));
  std::set<std::vector<Element>> seen{sol.x};
  std::vector<std::vector<Element>> frontier{sol.x};
  while (!frontier.empty()) {
    auto cur = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : sol.kernel) {
      auto next = cur;
      for (std::size_t j = 0; j < next.size(); ++j) next[j] = a.add(next[j], g[j]);
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace nilkit
