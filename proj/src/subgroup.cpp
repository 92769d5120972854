#include "wfl/subgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace wfl {

bool SubgroupHandle::contains(Elem x) const { return std::binary_search(elements.begin(), elements.end(), x); }

bool is_subgroup(const FiniteGroup& g, const std::vector<Elem>& elements) {
  if (elements.empty() || elements.front() != 0) return false;
  std::vector<char> in(g.order(), 0);
  for (Elem x : elements) {
    if (x >= g.order()) return false;
    in[x] = 1;
  }
  for (Elem a : elements) {
    if (!in[g.inv(a)]) return false;
    for (Elem b : elements)
      if (!in[g.mul(a, b)]) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<Elem>& elements) {
  std::vector<char> in(g.order(), 0);
  for (Elem x : elements) in[x] = 1;
  for (Elem s : greedy_generators(g))
    for (Elem x : elements)
      if (!in[g.conj(s, x)]) return false;
  return true;
}

bool is_invariant(const std::vector<Elem>& elements, const AutSet& auts) {
  if (auts.size() == 0) return true;
  std::vector<char> in(auts.group_order(), 0);
  for (Elem x : elements) in[x] = 1;
  for (const auto& a : auts)
    for (Elem x : elements)
      if (!in[a(x)]) return false;
  return true;
}

namespace {

bool invariant_under_generators(const std::vector<Elem>& elements, const AutSet& aut,
                                const std::vector<std::size_t>& gens) {
  std::vector<char> in(aut.group_order(), 0);
  for (Elem x : elements) in[x] = 1;
  for (std::size_t gi : gens)
    for (Elem x : elements)
      if (!in[aut[gi](x)]) return false;
  return true;
}

void sort_handles(std::vector<SubgroupHandle>& hs) {
  std::sort(hs.begin(), hs.end(), [](const SubgroupHandle& a, const SubgroupHandle& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
}

}  // namespace

SubgroupHandle make_subgroup(const FiniteGroup& g, std::vector<Elem> elements, const Limits& limits,
                             const AutSet* aut) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_subgroup(g, elements)) throw InputError("element set is not a subgroup");
  SubgroupHandle h;
  h.elements = std::move(elements);
  h.normal = is_normal(g, h.elements);
  if (h.normal) {
    if (aut) {
      h.characteristic = invariant_under_generators(h.elements, *aut, aut->generators());
    } else {
      auto full = automorphism_group(g, limits);
      h.characteristic = invariant_under_generators(h.elements, full, full.generators());
    }
  }
  return h;
}

SubgroupHandle trivial_subgroup(const FiniteGroup&, const Limits&) { return {{0}, true, true}; }

SubgroupHandle whole_group(const FiniteGroup& g, const Limits&) {
  SubgroupHandle h;
  h.elements.resize(g.order());
  std::iota(h.elements.begin(), h.elements.end(), Elem{0});
  h.normal = h.characteristic = true;
  return h;
}

std::vector<SubgroupHandle> subgroups(const FiniteGroup& g, const Limits& limits) {
  if (g.order() > limits.subgroup_order_cap)
    throw CapExceeded("subgroup enumeration needs |G| <= " + std::to_string(limits.subgroup_order_cap));
  const std::size_t n = g.order();

  // One generator per distinct cyclic subgroup.
  std::vector<Elem> cyclic_gens;
  {
    std::set<std::vector<Elem>> seen;
    for (Elem x = 1; x < n; ++x) {
      Elem one[] = {x};
      if (seen.insert(generated_subgroup(g, one)).second) cyclic_gens.push_back(x);
    }
  }

  struct Node {
    std::vector<Elem> elements;
    std::vector<Elem> gens;
    std::vector<char> in;
  };
  std::vector<Node> found;
  std::set<std::vector<Elem>> seen;
  auto add = [&](std::vector<Elem> elements, std::vector<Elem> gens) {
    if (!seen.insert(elements).second) return;
    std::vector<char> in(n, 0);
    for (Elem x : elements) in[x] = 1;
    found.push_back({std::move(elements), std::move(gens), std::move(in)});
  };
  add({0}, {});
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Elem c : cyclic_gens) {
      if (found[i].in[c]) continue;
      auto gens = found[i].gens;
      gens.push_back(c);
      auto elements = generated_subgroup(g, gens);
      add(std::move(elements), std::move(gens));
    }
  }

  auto aut = automorphism_group(g, limits);
  auto aut_gens = aut.generators();
  auto g_gens = greedy_generators(g);
  std::vector<SubgroupHandle> out;
  out.reserve(found.size());
  for (auto& node : found) {
    SubgroupHandle h;
    h.elements = std::move(node.elements);
    h.normal = true;
    for (Elem s : g_gens) {
      for (Elem x : h.elements)
        if (!node.in[g.conj(s, x)]) {
          h.normal = false;
          break;
        }
      if (!h.normal) break;
    }
    h.characteristic = h.normal && invariant_under_generators(h.elements, aut, aut_gens);
    out.push_back(std::move(h));
  }
  sort_handles(out);
  return out;
}

std::vector<SubgroupHandle> normal_subgroups(const FiniteGroup& g, const Limits& limits) {
  if (g.order() > limits.normal_order_cap)
    throw CapExceeded("normal subgroup enumeration needs |G| <= " + std::to_string(limits.normal_order_cap));
  auto cls = g.conjugacy_classes();
  std::size_t num_classes = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::vector<Elem>> class_members(num_classes);
  for (Elem x = 0; x < g.order(); ++x) class_members[cls[x]].push_back(x);

  // Normal closures of single classes.
  std::vector<std::vector<Elem>> closures;
  std::set<std::vector<Elem>> seen;
  for (const auto& members : class_members) {
    auto n = generated_subgroup(g, members);
    if (seen.insert(n).second) closures.push_back(std::move(n));
  }
  std::vector<std::vector<Elem>> found = closures;
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::vector<char> in(g.order(), 0);
    for (Elem x : found[i]) in[x] = 1;
    for (const auto& c : closures) {
      if (std::all_of(c.begin(), c.end(), [&](Elem x) { return in[x]; })) continue;
      std::vector<char> prod(g.order(), 0);
      std::vector<Elem> joined;
      for (Elem a : found[i])
        for (Elem b : c) {
          Elem p = g.mul(a, b);
          if (!prod[p]) {
            prod[p] = 1;
            joined.push_back(p);
          }
        }
      std::sort(joined.begin(), joined.end());
      if (seen.insert(joined).second) found.push_back(std::move(joined));
    }
  }
  std::vector<SubgroupHandle> out;
  for (auto& f : found) out.push_back({std::move(f), true, false});
  sort_handles(out);
  return out;
}

FiniteGroup subgroup_group(const FiniteGroup& g, const SubgroupHandle& n) {
  std::vector<Elem> index(g.order(), static_cast<Elem>(-1));
  for (std::size_t i = 0; i < n.elements.size(); ++i) index[n.elements[i]] = static_cast<Elem>(i);
  std::size_t m = n.order();
  std::vector<Elem> t(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Elem p = index[g.mul(n.elements[a], n.elements[b])];
      if (p == static_cast<Elem>(-1)) throw InputError("element set is not closed under multiplication");
      t[a * m + b] = p;
    }
  return FiniteGroup(m, std::move(t), "subgroup of order " + std::to_string(m) + " in " + g.spec());
}

QuotientHandle quotient(const FiniteGroup& g, const SubgroupHandle& n) {
  if (!is_subgroup(g, n.elements) || !is_normal(g, n.elements)) throw InputError("quotient needs a normal subgroup");
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> proj(g.order(), unset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (proj[x] != unset) continue;
    Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem k : n.elements) proj[g.mul(k, x)] = id;
  }
  std::size_t m = reps.size();
  std::vector<Elem> t(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a * m + b] = proj[g.mul(reps[a], reps[b])];
  FiniteGroup q(m, std::move(t), g.spec() + " / (order " + std::to_string(n.order()) + ")");
  return {std::move(q), std::move(proj), std::move(reps)};
}

AutSet induced_autset(const FiniteGroup& g, const SubgroupHandle& n, const QuotientHandle& q, const AutSet& a) {
  if (a.group_order() != g.order()) throw InputError("automorphism set does not act on G");
  if (!is_invariant(n.elements, a)) throw InputError("subgroup is not invariant under the automorphism set");
  std::set<Automorphism> seen;
  std::size_t m = q.quotient.order();
  for (const auto& alpha : a) {
    std::vector<Elem> map(m);
    for (std::size_t c = 0; c < m; ++c) map[c] = q.projection[alpha(q.representatives[c])];
    seen.emplace(std::move(map));
  }
  return AutSet(m, std::vector<Automorphism>(seen.begin(), seen.end()), AutSet::Kind::custom, a.contains_inner());
}

AutSet restricted_autset(const FiniteGroup& g, const SubgroupHandle& n, const AutSet& a) {
  if (a.group_order() != g.order()) throw InputError("automorphism set does not act on G");
  if (!is_invariant(n.elements, a)) throw InputError("subgroup is not invariant under the automorphism set");
  std::vector<Elem> index(g.order(), 0);
  for (std::size_t i = 0; i < n.elements.size(); ++i) index[n.elements[i]] = static_cast<Elem>(i);
  std::set<Automorphism> seen;
  for (const auto& alpha : a) {
    std::vector<Elem> map(n.order());
    for (std::size_t i = 0; i < n.order(); ++i) map[i] = index[alpha(n.elements[i])];
    seen.emplace(std::move(map));
  }
  auto kind = n.order() == g.order() ? a.kind() : AutSet::Kind::custom;
  return AutSet(n.order(), std::vector<Automorphism>(seen.begin(), seen.end()), kind, a.contains_inner());
}

std::vector<Elem> derived_subgroup(const FiniteGroup& g, const std::vector<Elem>& elements) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> comms;
  for (Elem a : elements)
    for (Elem b : elements) {
      Elem c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return generated_subgroup(g, comms);
}

bool is_solvable(const FiniteGroup& g, const std::vector<Elem>& elements) {
  auto current = elements;
  while (current.size() > 1) {
    auto next = derived_subgroup(g, current);
    if (next.size() == current.size()) return false;
    current = std::move(next);
  }
  return true;
}

bool is_simple(const FiniteGroup& g, const Limits& limits) {
  if (g.order() == 1) return false;
  if (g.is_abelian()) {
    std::size_t n = g.order();
    for (std::size_t p = 2; p * p <= n; ++p)
      if (n % p == 0) return false;
    return true;
  }
  return normal_subgroups(g, limits).size() == 2;
}

std::string simple_group_name(const FiniteGroup& s) {
  if (s.is_abelian()) return "C" + std::to_string(s.order());
  switch (s.order()) {
    case 60: return "A5";
    case 168: return "PSL(2,7)";
    case 360: return "A6";
    case 504: return "PSL(2,8)";
    case 660: return "PSL(2,11)";
    default: return "simple(" + std::to_string(s.order()) + ")";
  }
}

SimpleDecomposition decompose_char_simple(const FiniteGroup& f, const Limits& limits) {
  if (f.order() == 1) throw InputError("trivial group has no simple decomposition");
  auto normals = normal_subgroups(f, limits);
  // Sorted by order, so the first nontrivial one is a minimal normal subgroup.
  const SubgroupHandle& minimal = normals.at(1);
  FiniteGroup s = subgroup_group(f, minimal);
  if (!is_simple(s, limits)) throw InputError("group is not characteristically simple (minimal normal subgroup is not simple)");
  std::size_t power = 0;
  std::size_t acc = 1;
  while (acc < f.order()) {
    acc *= s.order();
    ++power;
  }
  if (acc != f.order()) throw InputError("group is not characteristically simple (order is not a power of |S|)");
  auto candidate = direct_power(s, power, limits);
  if (!is_isomorphic(f, candidate, limits)) throw InputError("group is not characteristically simple (not isomorphic to S^n)");
  std::string name = simple_group_name(s);
  return {std::move(s), power, std::move(name)};
}

CharSeries characteristic_series(const FiniteGroup& g, const Limits& limits) {
  auto all = subgroups(g, limits);
  std::vector<SubgroupHandle> chars;
  for (auto& h : all)
    if (h.characteristic) chars.push_back(h);

  auto strictly_contains = [](const SubgroupHandle& big, const SubgroupHandle& small) {
    return big.order() > small.order() &&
           std::includes(big.elements.begin(), big.elements.end(), small.elements.begin(), small.elements.end());
  };

  CharSeries series;
  series.chain.push_back(chars.front());
  while (series.chain.back().order() < g.order()) {
    const auto& current = series.chain.back();
    const SubgroupHandle* best = nullptr;
    for (const auto& k : chars) {
      if (!strictly_contains(k, current)) continue;
      bool minimal = std::none_of(chars.begin(), chars.end(), [&](const SubgroupHandle& l) {
        return strictly_contains(l, current) && strictly_contains(k, l);
      });
      if (minimal && (!best || k.elements < best->elements)) best = &k;
    }
    series.chain.push_back(*best);
  }

  for (std::size_t i = 1; i < series.chain.size(); ++i) {
    const auto& upper = series.chain[i];
    const auto& lower = series.chain[i - 1];
    FiniteGroup upper_group = subgroup_group(g, upper);
    SubgroupHandle lower_in_upper;
    for (Elem x : lower.elements) {
      auto pos = std::lower_bound(upper.elements.begin(), upper.elements.end(), x) - upper.elements.begin();
      lower_in_upper.elements.push_back(static_cast<Elem>(pos));
    }
    std::sort(lower_in_upper.elements.begin(), lower_in_upper.elements.end());
    lower_in_upper.normal = true;
    auto q = quotient(upper_group, lower_in_upper);
    series.decompositions.push_back(decompose_char_simple(q.quotient, limits));
    series.factors.push_back(std::move(q.quotient));
  }
  return series;
}

SubgroupHandle solvable_radical(const FiniteGroup& g, const Limits& limits) {
  auto normals = normal_subgroups(g, limits);
  const SubgroupHandle* best = &normals.front();
  for (const auto& n : normals)
    if (n.order() > best->order() && is_solvable(g, n.elements)) best = &n;
  SubgroupHandle out = *best;
  out.characteristic = true;
  return out;
}

WreathAutGroup::WreathAutGroup(const FiniteGroup& s, std::size_t n, const AutSet& base, const Limits& limits)
    : s_(s), n_(n), base_(base), power_(direct_power(s, n, limits)) {
  if (base.group_order() != s.order()) throw InputError("base automorphisms do not act on S");
}

BigInt WreathAutGroup::size() const {
  BigInt total;
  mpz_ui_pow_ui(total.get_mpz_t(), base_.size(), n_);
  for (std::size_t i = 2; i <= n_; ++i) total *= static_cast<unsigned long>(i);
  return total;
}

Automorphism WreathAutGroup::element(const std::vector<std::size_t>& alphas, const std::vector<std::size_t>& sigma) const {
  if (alphas.size() != n_ || sigma.size() != n_) throw InputError("wreath element needs n coordinates");
  const std::size_t m = s_.order();
  std::vector<Elem> map(power_.order());
  std::vector<std::size_t> x(n_), y(n_);
  for (std::size_t idx = 0; idx < power_.order(); ++idx) {
    std::size_t r = idx;
    for (std::size_t j = 0; j < n_; ++j) {
      x[j] = r % m;
      r /= m;
    }
    for (std::size_t i = 0; i < n_; ++i) y[sigma[i]] = x[i];
    std::size_t out = 0;
    for (std::size_t j = n_; j-- > 0;) out = out * m + base_[alphas[j]](static_cast<Elem>(y[j]));
    map[idx] = static_cast<Elem>(out);
  }
  return Automorphism(std::move(map));
}

Automorphism WreathAutGroup::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, base_.size() - 1);
  std::vector<std::size_t> alphas(n_), sigma(n_);
  for (auto& a : alphas) a = pick(rng);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::shuffle(sigma.begin(), sigma.end(), rng);
  return element(alphas, sigma);
}

AutSet WreathAutGroup::enumerate(const Limits& limits) const {
  if (size() > BigInt(static_cast<unsigned long>(limits.autset_cap)))
    throw CapExceeded("wreath automorphism set has " + size().get_str() + " members, above the cap " +
                      std::to_string(limits.autset_cap));
  std::vector<Automorphism> members;
  std::vector<std::size_t> sigma(n_);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  do {
    std::vector<std::size_t> alphas(n_, 0);
    for (;;) {
      members.push_back(element(alphas, sigma));
      std::size_t j = 0;
      while (j < n_ && ++alphas[j] == base_.size()) alphas[j++] = 0;
      if (j == n_) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  bool inner = base_.contains_inner();
  return AutSet(power_.order(), std::move(members), AutSet::Kind::custom, inner);
}

}  // namespace wfl
