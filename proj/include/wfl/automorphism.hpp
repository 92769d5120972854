#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wfl/group.hpp"

namespace wfl {

/// A bijection on element indices respecting multiplication; map[0] == 0.
class Automorphism {
 public:
  Automorphism() = default;
  explicit Automorphism(std::vector<Elem> map) : map_(std::move(map)) {}

  static Automorphism identity(std::size_t order);
  /// conj(g): x -> g x g^{-1}
  static Automorphism conjugation(const FiniteGroup& g, Elem by);

  Elem operator()(Elem x) const { return map_[x]; }
  std::size_t size() const { return map_.size(); }
  const std::vector<Elem>& map() const { return map_; }

  bool is_identity() const;
  Automorphism inverse() const;
  /// Checks bijectivity and the homomorphism law on all pairs.
  bool is_automorphism_of(const FiniteGroup& g) const;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  friend auto operator<=>(const Automorphism& a, const Automorphism& b) { return a.map_ <=> b.map_; }

 private:
  std::vector<Elem> map_;
};

/// (a * b)(x) = a(b(x))
Automorphism compose(const Automorphism& a, const Automorphism& b);

struct VectorHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept;
};

/// An enumerated subgroup of Aut(G). Members are sorted lexicographically by
/// their maps, so the identity is always member 0.
class AutSet {
 public:
  enum class Kind { identity_only, inner, full, custom };

  AutSet(std::size_t group_order, std::vector<Automorphism> members, Kind kind, bool contains_inner);

  std::size_t group_order() const { return group_order_; }
  std::size_t size() const { return members_.size(); }
  const Automorphism& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Automorphism>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  Kind kind() const { return kind_; }
  bool contains_inner() const { return contains_inner_; }

  std::optional<std::size_t> index_of(const Automorphism& a) const;
  bool contains(const Automorphism& a) const { return index_of(a).has_value(); }

  /// Closed under composition and inverses, with the identity present.
  bool is_closed() const;
  /// A generating set chosen greedily over members in index order.
  std::vector<std::size_t> generators() const;

 private:
  std::size_t group_order_;
  std::vector<Automorphism> members_;
  std::unordered_map<std::vector<Elem>, std::size_t, VectorHash> index_;
  Kind kind_;
  bool contains_inner_;
};

std::string to_string(AutSet::Kind kind);

AutSet identity_autset(const FiniteGroup& g);
AutSet inner_automorphisms(const FiniteGroup& g);
/// Full Aut(G) by generator-image backtracking.
AutSet automorphism_group(const FiniteGroup& g, const Limits& limits = default_limits());
/// Closure of `gens` under composition, as a custom AutSet.
AutSet generate_autset(const FiniteGroup& g, const std::vector<Automorphism>& gens, bool contains_inner,
                       const Limits& limits = default_limits());

/// Witness isomorphism G -> H when one exists.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                                  const Limits& limits = default_limits());
inline bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h, const Limits& limits = default_limits()) {
  return find_isomorphism(g, h, limits).has_value();
}
/// Checks that `map` is a bijective homomorphism G -> H.
bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Elem>& map);

}  // namespace wfl
