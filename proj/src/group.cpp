#include "nilkit/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

namespace nilkit {

Element FiniteGroup::power(Element a, std::uint64_t k) const {
  Element result = identity_;
  Element base = a;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint32_t FiniteGroup::element_order(Element a) const {
  std::uint32_t k = 1;
  for (Element x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const { return !noncommuting_pair().has_value(); }

std::optional<std::pair<Element, Element>> FiniteGroup::noncommuting_pair() const {
  for (Element a = 0; a < n_; ++a)
    for (Element b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return std::pair(a, b);
  return std::nullopt;
}

namespace {

// Generating set of the magma given by the table, chosen greedily.
std::vector<Element> magma_generators(std::uint32_t n, const std::vector<Element>& t) {
  std::vector<char> in(n, 0);
  std::vector<Element> members;
  std::vector<Element> gens;
  for (Element x = 0; x < n; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    std::deque<Element> fresh{x};
    in[x] = 1;
    members.push_back(x);
    while (!fresh.empty()) {
      Element a = fresh.front();
      fresh.pop_front();
      for (std::size_t k = 0; k < members.size(); ++k) {
        Element b = members[k];
        for (Element p : {t[std::size_t(a) * n + b], t[std::size_t(b) * n + a]}) {
          if (!in[p]) {
            in[p] = 1;
            members.push_back(p);
            fresh.push_back(p);
          }
        }
      }
    }
  }
  return gens;
}

}  // namespace

FiniteGroup validate_group(std::uint32_t order, std::vector<Element> table) {
  if (order == 0) throw NotAGroup("empty table", {});
  if (order > kMaxGroupOrder)
    throw InputError("group.TooLarge", "order " + std::to_string(order) + " exceeds cap");
  if (table.size() != std::size_t(order) * order)
    throw NotAGroup("table is not " + std::to_string(order) + "x" + std::to_string(order), {});
  for (std::size_t k = 0; k < table.size(); ++k)
    if (table[k] >= order)
      throw NotAGroup("entry out of range", {Element(k / order), Element(k % order)});
  auto m = [&](Element a, Element b) { return table[std::size_t(a) * order + b]; };

  std::optional<Element> identity;
  for (Element e = 0; e < order && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < order && ok; ++x) ok = m(e, x) == x && m(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) throw NotAGroup("missing identity", {});

  std::vector<Element> inverse(order);
  for (Element a = 0; a < order; ++a) {
    bool found = false;
    for (Element b = 0; b < order && !found; ++b) {
      if (m(a, b) == *identity && m(b, a) == *identity) {
        inverse[a] = b;
        found = true;
      }
    }
    if (!found) throw NotAGroup("missing inverse", {a});
  }

  // Light's associativity test: enough to check (x g) y = x (g y) for g in a
  // generating set of the magma.
  for (Element g : magma_generators(order, table))
    for (Element x = 0; x < order; ++x)
      for (Element y = 0; y < order; ++y)
        if (m(m(x, g), y) != m(x, m(g, y))) throw NotAGroup("associativity fails", {x, g, y});

  FiniteGroup out;
  out.n_ = order;
  out.table_ = std::move(table);
  out.identity_ = *identity;
  out.inverse_ = std::move(inverse);
  return out;
}

Subgroup::Subgroup(std::vector<Element> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool Subgroup::contains(Element a) const {
  return std::binary_search(elements_.begin(), elements_.end(), a);
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(all));
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup({g.identity()}); }

Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> generators) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> members{g.identity()};
  in[g.identity()] = 1;
  std::deque<Element> fresh{g.identity()};
  while (!fresh.empty()) {
    Element a = fresh.front();
    fresh.pop_front();
    for (Element s : generators) {
      Element p = g.mul(a, s);
      if (!in[p]) {
        in[p] = 1;
        members.push_back(p);
        fresh.push_back(p);
      }
    }
  }
  return Subgroup(std::move(members));
}

std::vector<Element> generating_set(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> gens;
  Subgroup current = trivial_subgroup(g);
  for (Element a : h.elements()) {
    if (current.contains(a)) continue;
    gens.push_back(a);
    current = subgroup_closure(g, gens);
    if (current.order() == h.order()) break;
  }
  return gens;
}

bool is_subgroup(const FiniteGroup& g, std::span<const Element> elements) {
  Subgroup s(std::vector<Element>(elements.begin(), elements.end()));
  if (!s.contains(g.identity())) return false;
  for (Element a : s.elements()) {
    if (!s.contains(g.inv(a))) return false;
    for (Element b : s.elements())
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> comms;
  for (Element x : a.elements())
    for (Element y : b.elements()) {
      Element c = g.commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return subgroup_closure(g, comms);
}

Filtration::Filtration(std::vector<Subgroup> levels, bool proper)
    : levels_(std::move(levels)), proper_(proper) {
  if (levels_.size() < 2)
    throw InputError("group.BadFiltration", "a filtration needs at least G_0 and G_{s+1}");
}

const Subgroup& Filtration::level(int i) const {
  if (i < 0) return levels_.front();
  if (i >= static_cast<int>(levels_.size())) return levels_.back();
  return levels_[i];
}

std::vector<Subgroup> lower_central_terms(const FiniteGroup& g) {
  std::vector<Subgroup> terms{whole_group(g)};
  const Subgroup all = terms.front();
  while (true) {
    Subgroup next = commutator_subgroup(g, all, terms.back());
    if (next == terms.back()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

Filtration lower_central_series(const FiniteGroup& g) {
  auto terms = lower_central_terms(g);
  if (terms.back().order() != 1)
    throw FiltrationError("group.NotNilpotent",
                          "lower central series stabilizes at a subgroup of order " +
                              std::to_string(terms.back().order()),
                          {static_cast<std::int64_t>(terms.size()), terms.back().order()});
  std::vector<Subgroup> levels{terms.front()};
  levels.insert(levels.end(), terms.begin(), terms.end());
  // one-element group: G_0 = G_1 = {e}; keep degree 0 as G_0 ⊇ G_1 = {e}
  if (g.order() == 1) levels.resize(2);
  return Filtration(std::move(levels), true);
}

Filtration validate_filtration(const FiniteGroup& g, const std::vector<std::vector<Element>>& chain) {
  if (chain.size() < 2)
    throw FiltrationError("group.BadFiltration", "chain needs at least two terms", {});
  std::vector<Subgroup> levels;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (Element a : chain[i])
      if (a >= g.order())
        throw FiltrationError("group.NotSubgroup", "element out of range", {std::int64_t(i), a});
    if (!is_subgroup(g, chain[i]))
      throw FiltrationError("group.NotSubgroup", "G_" + std::to_string(i) + " is not a subgroup",
                            {std::int64_t(i)});
    levels.emplace_back(chain[i]);
  }
  if (levels.front().order() != g.order())
    throw FiltrationError("group.NotDescending", "G_0 must be the whole group", {0});
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!levels[i].is_subset_of(levels[i - 1]))
      throw FiltrationError("group.NotDescending",
                            "G_" + std::to_string(i) + " is not contained in G_" + std::to_string(i - 1),
                            {std::int64_t(i)});
  if (levels.back().order() != 1)
    throw FiltrationError("group.NotDescending", "the last term must be trivial",
                          {std::int64_t(levels.size() - 1)});
  Filtration f(levels, levels[0] == levels[1]);
  const int top = static_cast<int>(levels.size());
  for (int i = 0; i < top; ++i)
    for (int j = i; j < top; ++j) {
      const Subgroup& target = f.level(i + j);
      for (Element a : f.level(i).elements())
        for (Element b : f.level(j).elements())
          if (!target.contains(g.commutator(a, b)))
            throw FiltrationError("group.BracketViolation",
                                  "[G_" + std::to_string(i) + ",G_" + std::to_string(j) +
                                      "] is not contained in G_" + std::to_string(i + j),
                                  {i, j, a, b});
    }
  return f;
}

Quotient quotient_group(const FiniteGroup& g, const Subgroup& n) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element k : n.elements())
      if (!n.contains(g.mul(g.mul(x, k), g.inv(x))))
        throw FiltrationError("group.NotNormal", "subgroup is not normal", {x, k});
  const Element none = g.order();
  std::vector<Element> proj(g.order(), none);
  std::vector<Element> reps;
  for (Element x = 0; x < g.order(); ++x) {
    if (proj[x] != none) continue;
    Element idx = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element k : n.elements()) proj[g.mul(x, k)] = idx;
  }
  const auto q = static_cast<std::uint32_t>(reps.size());
  std::vector<Element> table(std::size_t(q) * q);
  for (Element a = 0; a < q; ++a)
    for (Element b = 0; b < q; ++b) table[std::size_t(a) * q + b] = proj[g.mul(reps[a], reps[b])];
  return Quotient{validate_group(q, std::move(table)), std::move(proj), std::move(reps)};
}

Element FiniteAbelianGroup::times(Element a, std::int64_t k) const {
  const std::int64_t ord = group_.element_order(a);
  k %= ord;
  if (k < 0) k += ord;
  return group_.power(a, static_cast<std::uint64_t>(k));
}

Element FiniteAbelianGroup::from_coordinates(std::span<const std::uint32_t> t) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < invariants_.size(); ++i) idx = idx * invariants_[i] + t[i] % invariants_[i];
  return by_index_[idx];
}

namespace {

// Cyclic decomposition of G restricted to the elements `members` modulo
// the subgroup spanned by `fixed` generators: returns generators whose
// orders are the (descending) cyclic factor orders.
struct Split {
  std::vector<Element> gens;
  std::vector<std::uint32_t> orders;
};

Split split_cyclic(const FiniteGroup& g, const Subgroup& sub) {
  // Work inside the quotient G / sub by tracking cosets explicitly.
  Split out;
  Subgroup current = sub;
  while (current.order() < g.order()) {
    Quotient q = quotient_group(g, current);
    // element of maximal order in the quotient
    Element best = 0;
    std::uint32_t best_order = 1;
    for (Element c = 0; c < q.group.order(); ++c) {
      auto o = q.group.element_order(c);
      if (o > best_order) {
        best_order = o;
        best = c;
      }
    }
    // lift to an element of G of the same order: x + y with y in current
    Element x = q.representatives[best];
    std::optional<Element> lift;
    for (Element y : current.elements()) {
      Element cand = g.mul(x, y);
      if (g.element_order(cand) == best_order) {
        lift = cand;
        break;
      }
    }
    if (!lift) throw Error("group.Internal", "no lift of maximal-order element");
    out.gens.push_back(*lift);
    out.orders.push_back(best_order);
    std::vector<Element> span = current.elements();
    span.push_back(*lift);
    current = subgroup_closure(g, span);
  }
  return out;
}

}  // namespace

FiniteAbelianGroup abelian_invariants(const FiniteGroup& a) {
  if (auto pair = a.noncommuting_pair())
    throw FiltrationError("group.NotAbelian", "group is not commutative", {pair->first, pair->second});
  // Splitting off a maximal-order cyclic subgroup C of A, the quotient A/C
  // decomposes recursively and its generators lift with equal order. We
  // realise the recursion bottom-up: the lifted generators are found in the
  // order "largest factor first" by peeling from the top of A/<span>.
  // Split::split_cyclic works with quotients of A by the span built so far.
  Split sp = split_cyclic(a, trivial_subgroup(a));
  FiniteAbelianGroup out;
  out.group_ = a;
  // ascending invariant factors
  out.invariants_.assign(sp.orders.rbegin(), sp.orders.rend());
  out.generators_.assign(sp.gens.rbegin(), sp.gens.rend());
  const std::size_t r = out.invariants_.size();
  std::size_t total = 1;
  for (auto m : out.invariants_) total *= m;
  if (total != a.order()) throw Error("group.Internal", "invariant factors do not multiply to |A|");
  out.by_index_.assign(total, 0);
  out.coords_.assign(a.order(), {});
  std::vector<char> hit(a.order(), 0);
  std::vector<std::uint32_t> t(r, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Element e = a.identity();
    for (std::size_t i = 0; i < r; ++i) e = a.mul(e, a.power(out.generators_[i], t[i]));
    if (hit[e]) throw Error("group.Internal", "decomposition map is not injective");
    hit[e] = 1;
    out.by_index_[idx] = e;
    out.coords_[e] = t;
    for (std::size_t i = r; i-- > 0;) {
      if (++t[i] < out.invariants_[i]) break;
      t[i] = 0;
    }
  }
  // homomorphism check of the coordinate map
  for (Element x = 0; x < a.order(); ++x)
    for (Element y = 0; y < a.order(); ++y) {
      const auto& cx = out.coords_[x];
      const auto& cy = out.coords_[y];
      const auto& cz = out.coords_[a.mul(x, y)];
      for (std::size_t i = 0; i < r; ++i)
        if ((cx[i] + cy[i]) % out.invariants_[i] != cz[i])
          throw Error("group.Internal", "decomposition map is not a homomorphism");
    }
  return out;
}

FiniteGroup cyclic_group(std::uint32_t n) {
  std::vector<Element> t(std::size_t(n) * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[std::size_t(a) * n + b] = (a + b) % n;
  return validate_group(n, std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::uint32_t n = a.order() * b.order();
  std::vector<Element> t(std::size_t(n) * n);
  // element (x, y) has index x * |B| + y
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q) {
      Element x = a.mul(p / b.order(), q / b.order());
      Element y = b.mul(p % b.order(), q % b.order());
      t[std::size_t(p) * n + q] = x * b.order() + y;
    }
  return validate_group(n, std::move(t));
}

FiniteGroup dihedral_group(std::uint32_t m) {
  // r^k s^f ; s r = r^-1 s
  const std::uint32_t n = 2 * m;
  std::vector<Element> t(std::size_t(n) * n);
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q) {
      std::uint32_t k1 = p % m, f1 = p / m, k2 = q % m, f2 = q / m;
      // r^k1 s^f1 r^k2 s^f2 = r^{k1 + (f1 ? -k2 : k2)} s^{f1+f2}
      std::uint32_t k = f1 ? (k1 + m - k2) % m : (k1 + k2) % m;
      std::uint32_t f = (f1 + f2) % 2;
      t[std::size_t(p) * n + q] = k + m * f;
    }
  return validate_group(n, std::move(t));
}

FiniteGroup permutation_group(const std::vector<std::vector<std::uint32_t>>& generators,
                              std::vector<std::vector<std::uint32_t>>* elements) {
  if (generators.empty()) throw InputError("group.BadPermutation", "no generators");
  const std::size_t k = generators.front().size();
  using Perm = std::vector<std::uint32_t>;
  for (const auto& p : generators) {
    Perm sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < k; ++i)
      if (p.size() != k || sorted[i] != i) throw InputError("group.BadPermutation", "not a permutation");
  }
  // (p q)(x) = p(q(x)): apply q first
  auto compose = [k](const Perm& p, const Perm& q) {
    Perm r(k);
    for (std::size_t x = 0; x < k; ++x) r[x] = p[q[x]];
    return r;
  };
  Perm id(k);
  std::iota(id.begin(), id.end(), 0);
  std::map<Perm, Element> index;
  std::vector<Perm> elems{id};
  index[id] = 0;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : generators) {
      Perm p = compose(elems[head], s);
      if (!index.count(p)) {
        index[p] = 0;
        elems.push_back(p);
        check_guard("permutation_group", elems.size());
        if (elems.size() > kMaxGroupOrder)
          throw InputError("group.TooLarge", "permutation group exceeds order cap");
      }
    }
  }
  std::sort(elems.begin() + 1, elems.end());
  for (Element i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  const auto n = static_cast<std::uint32_t>(elems.size());
  std::vector<Element> t(std::size_t(n) * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[std::size_t(a) * n + b] = index.at(compose(elems[a], elems[b]));
  if (elements) *elements = elems;
  return validate_group(n, std::move(t));
}

FiniteGroup symmetric_group(std::uint32_t k) {
  if (k < 2) return cyclic_group(1);
  std::vector<std::uint32_t> swap(k), cycle(k);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (std::uint32_t i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
  return permutation_group({swap, cycle});
}

FiniteGroup alternating_group(std::uint32_t k) {
  if (k < 3) return cyclic_group(1);
  // 3-cycles (0 1 i) generate A_k
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::uint32_t i = 2; i < k; ++i) {
    std::vector<std::uint32_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    p[0] = 1;
    p[1] = i;
    p[i] = 0;
    gens.push_back(p);
  }
  return permutation_group(gens);
}

FiniteAbelianGroup abelian_product(const std::vector<std::uint32_t>& cyclic_orders) {
  FiniteGroup g = cyclic_group(1);
  for (auto m : cyclic_orders) g = direct_product(g, cyclic_group(m));
  return abelian_invariants(g);
}

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, std::span<const Element> f) {
  if (f.size() != g.order()) return false;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (f[g.mul(a, b)] != h.mul(f[a], f[b])) return false;
  return true;
}

std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  const std::vector<Element> gens = generating_set(g, whole_group(g));
  std::vector<Element> images(gens.size());
  std::optional<std::vector<Element>> result;

  // Extend generator images to a map by breadth-first words; fail on conflict.
  auto extend = [&]() -> std::optional<std::vector<Element>> {
    const Element none = g.order();
    std::vector<Element> f(g.order(), none);
    f[g.identity()] = h.identity();
    std::deque<Element> fresh{g.identity()};
    while (!fresh.empty()) {
      Element a = fresh.front();
      fresh.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Element p = g.mul(a, gens[i]);
        Element img = h.mul(f[a], images[i]);
        if (f[p] == none) {
          f[p] = img;
          fresh.push_back(p);
        } else if (f[p] != img) {
          return std::nullopt;
        }
      }
    }
    std::vector<char> hit(h.order(), 0);
    for (Element y : f) {
      if (hit[y]) return std::nullopt;
      hit[y] = 1;
    }
    if (!is_homomorphism(g, h, f)) return std::nullopt;
    return f;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == gens.size()) {
      result = extend();
      return result.has_value();
    }
    const auto ord = g.element_order(gens[i]);
    for (Element y = 0; y < h.order(); ++y) {
      if (h.element_order(y) != ord) continue;
      images[i] = y;
      if (search(i + 1)) return true;
    }
    return false;
  };
  search(0);
  return result;
}

}  // namespace nilkit
