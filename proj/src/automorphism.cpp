#include "wfl/automorphism.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace wfl {

Automorphism Automorphism::identity(std::size_t order) {
  std::vector<Elem> m(order);
  for (std::size_t i = 0; i < order; ++i) m[i] = static_cast<Elem>(i);
  return Automorphism(std::move(m));
}

Automorphism Automorphism::conjugation(const FiniteGroup& g, Elem by) {
  std::vector<Elem> m(g.order());
  for (Elem x = 0; x < g.order(); ++x) m[x] = g.conj(by, x);
  return Automorphism(std::move(m));
}

bool Automorphism::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

Automorphism Automorphism::inverse() const {
  std::vector<Elem> m(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) m[map_[i]] = static_cast<Elem>(i);
  return Automorphism(std::move(m));
}

bool Automorphism::is_automorphism_of(const FiniteGroup& g) const {
  return is_isomorphism(g, g, map_);
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  std::vector<Elem> m(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) m[i] = a(b(static_cast<Elem>(i)));
  return Automorphism(std::move(m));
}

std::size_t VectorHash::operator()(const std::vector<Elem>& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Elem x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

AutSet::AutSet(std::size_t group_order, std::vector<Automorphism> members, Kind kind, bool contains_inner)
    : group_order_(group_order), members_(std::move(members)), kind_(kind), contains_inner_(contains_inner) {
  for (const auto& a : members_)
    if (a.size() != group_order_) throw InputError("automorphism size does not match group order");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty() || !members_.front().is_identity())
    throw InputError("automorphism set must contain the identity");
  index_.reserve(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) index_.emplace(members_[i].map(), i);
}

std::optional<std::size_t> AutSet::index_of(const Automorphism& a) const {
  auto it = index_.find(a.map());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool AutSet::is_closed() const {
  for (const auto& a : members_) {
    if (!contains(a.inverse())) return false;
    for (const auto& b : members_)
      if (!contains(compose(a, b))) return false;
  }
  return true;
}

std::vector<std::size_t> AutSet::generators() const {
  std::vector<std::size_t> gens;
  std::vector<char> reached(members_.size(), 0);
  reached[0] = 1;
  std::vector<std::size_t> closure{0};
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (reached[i]) continue;
    gens.push_back(i);
    // Re-close from scratch with the enlarged generating set.
    std::fill(reached.begin(), reached.end(), 0);
    reached[0] = 1;
    closure.assign(1, 0);
    for (std::size_t k = 0; k < closure.size(); ++k) {
      for (std::size_t gi : gens) {
        auto j = index_of(compose(members_[closure[k]], members_[gi]));
        if (!j) throw InputError("automorphism set is not closed under composition");
        if (!reached[*j]) {
          reached[*j] = 1;
          closure.push_back(*j);
        }
      }
    }
  }
  return gens;
}

std::string to_string(AutSet::Kind kind) {
  switch (kind) {
    case AutSet::Kind::identity_only: return "identity-only";
    case AutSet::Kind::inner: return "inner";
    case AutSet::Kind::full: return "full";
    case AutSet::Kind::custom: return "custom";
  }
  return "custom";
}

AutSet identity_autset(const FiniteGroup& g) {
  return AutSet(g.order(), {Automorphism::identity(g.order())}, AutSet::Kind::identity_only, g.is_abelian());
}

AutSet inner_automorphisms(const FiniteGroup& g) {
  std::set<Automorphism> seen;
  for (Elem x = 0; x < g.order(); ++x) seen.insert(Automorphism::conjugation(g, x));
  return AutSet(g.order(), std::vector<Automorphism>(seen.begin(), seen.end()), AutSet::Kind::inner, true);
}

AutSet generate_autset(const FiniteGroup& g, const std::vector<Automorphism>& gens, bool contains_inner,
                       const Limits& limits) {
  std::set<Automorphism> seen{Automorphism::identity(g.order())};
  std::vector<Automorphism> queue{Automorphism::identity(g.order())};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& s : gens) {
      auto c = compose(queue[i], s);
      if (seen.insert(c).second) {
        if (seen.size() > limits.autset_cap)
          throw CapExceeded("automorphism set exceeds cap " + std::to_string(limits.autset_cap));
        queue.push_back(std::move(c));
      }
    }
  }
  return AutSet(g.order(), std::vector<Automorphism>(seen.begin(), seen.end()), AutSet::Kind::custom,
                contains_inner);
}

namespace {

constexpr Elem kUnset = static_cast<Elem>(-1);

// Enumerates isomorphisms G -> H by backtracking over generator images.
// `visit` returns false to stop the search.
void search_isomorphisms(const FiniteGroup& g, const FiniteGroup& h,
                         const std::function<bool(const std::vector<Elem>&)>& visit) {
  if (g.order() != h.order()) return;
  const std::size_t n = g.order();
  auto gens = greedy_generators(g);
  auto g_orders = g.element_orders(), h_orders = h.element_orders();
  auto g_classes = g.class_sizes(), h_classes = h.class_sizes();

  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 0; y < n; ++y)
      if (h_orders[y] == g_orders[gens[i]] && h_classes[y] == g_classes[gens[i]]) candidates[i].push_back(y);

  std::vector<Elem> images(gens.size());
  std::vector<Elem> map(n);
  std::vector<char> used(n);
  std::vector<Elem> queue;
  queue.reserve(n);

  // Extends the homomorphism from <gens[0..depth]> along the Cayley graph; fails on
  // an inconsistent edge or a repeated image.
  auto extend = [&](std::size_t depth) {
    std::fill(map.begin(), map.end(), kUnset);
    std::fill(used.begin(), used.end(), 0);
    map[0] = 0;
    used[0] = 1;
    queue.assign(1, 0);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      Elem x = queue[q];
      for (std::size_t j = 0; j <= depth; ++j) {
        Elem y = g.mul(x, gens[j]);
        Elem img = h.mul(map[x], images[j]);
        if (map[y] == kUnset) {
          if (used[img]) return false;
          map[y] = img;
          used[img] = 1;
          queue.push_back(y);
        } else if (map[y] != img) {
          return false;
        }
      }
    }
    return true;
  };

  bool stop = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    for (Elem cand : candidates[depth]) {
      if (stop) return;
      images[depth] = cand;
      if (!extend(depth)) continue;
      if (depth + 1 == gens.size()) {
        if (!visit(map)) stop = true;
      } else {
        dfs(depth + 1);
      }
    }
  };
  if (gens.empty()) {
    // trivial group
    std::vector<Elem> id{0};
    visit(id);
    return;
  }
  dfs(0);
}

}  // namespace

AutSet automorphism_group(const FiniteGroup& g, const Limits& limits) {
  if (g.order() > limits.aut_group_order_cap)
    throw CapExceeded("automorphism group computation needs |G| <= " + std::to_string(limits.aut_group_order_cap));
  std::vector<Automorphism> found;
  search_isomorphisms(g, g, [&](const std::vector<Elem>& m) {
    found.emplace_back(m);
    if (found.size() > limits.autset_cap)
      throw CapExceeded("|Aut(G)| exceeds the automorphism set cap " + std::to_string(limits.autset_cap));
    return true;
  });
  return AutSet(g.order(), std::move(found), AutSet::Kind::full, true);
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                                  const Limits& limits) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.order() > limits.isomorphism_order_cap)
    throw CapExceeded("isomorphism test needs order <= " + std::to_string(limits.isomorphism_order_cap));
  std::optional<std::vector<Elem>> witness;
  search_isomorphisms(g, h, [&](const std::vector<Elem>& m) {
    witness = m;
    return false;
  });
  return witness;
}

bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Elem>& map) {
  if (map.size() != g.order() || g.order() != h.order()) return false;
  std::vector<char> hit(h.order(), 0);
  for (Elem x : map) {
    if (x >= h.order() || hit[x]) return false;
    hit[x] = 1;
  }
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
  return true;
}

}  // namespace wfl
