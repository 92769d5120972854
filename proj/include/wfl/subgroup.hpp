#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wfl/automorphism.hpp"
#include "wfl/group.hpp"

namespace wfl {

/// A subgroup of some G as a sorted list of element indices (0 is always first).
struct SubgroupHandle {
  std::vector<Elem> elements;
  bool normal = false;
  bool characteristic = false;

  std::size_t order() const { return elements.size(); }
  bool contains(Elem x) const;
  friend bool operator==(const SubgroupHandle& a, const SubgroupHandle& b) { return a.elements == b.elements; }
};

/// Builds a handle for the subgroup with these elements, computing both flags
/// (the characteristic flag needs |G| within the automorphism cap).
/// `aut` may be passed to avoid recomputing Aut(G).
SubgroupHandle make_subgroup(const FiniteGroup& g, std::vector<Elem> elements, const Limits& limits = default_limits(),
                             const AutSet* aut = nullptr);
SubgroupHandle trivial_subgroup(const FiniteGroup& g, const Limits& limits = default_limits());
SubgroupHandle whole_group(const FiniteGroup& g, const Limits& limits = default_limits());

bool is_subgroup(const FiniteGroup& g, const std::vector<Elem>& elements);
bool is_normal(const FiniteGroup& g, const std::vector<Elem>& elements);
bool is_invariant(const std::vector<Elem>& elements, const AutSet& auts);

/// All subgroups, sorted by (order, elements).
std::vector<SubgroupHandle> subgroups(const FiniteGroup& g, const Limits& limits = default_limits());
/// All normal subgroups (unions of conjugacy classes), sorted by (order, elements).
/// The characteristic flag is left false.
std::vector<SubgroupHandle> normal_subgroups(const FiniteGroup& g, const Limits& limits = default_limits());

/// N as a group in its own right; element i of the result is N.elements[i].
FiniteGroup subgroup_group(const FiniteGroup& g, const SubgroupHandle& n);

struct QuotientHandle {
  FiniteGroup quotient;
  /// G-index -> quotient index
  std::vector<Elem> projection;
  /// quotient index -> minimal G-index in the coset
  std::vector<Elem> representatives;
};

QuotientHandle quotient(const FiniteGroup& g, const SubgroupHandle& n);

/// Automorphisms of G/N induced by members of A. N must be A-invariant.
AutSet induced_autset(const FiniteGroup& g, const SubgroupHandle& n, const QuotientHandle& q, const AutSet& a);
/// Restrictions of members of A to N, in N's numbering. N must be A-invariant.
AutSet restricted_autset(const FiniteGroup& g, const SubgroupHandle& n, const AutSet& a);

std::vector<Elem> derived_subgroup(const FiniteGroup& g, const std::vector<Elem>& elements);
bool is_solvable(const FiniteGroup& g, const std::vector<Elem>& elements);
bool is_simple(const FiniteGroup& g, const Limits& limits = default_limits());

struct SimpleDecomposition {
  FiniteGroup simple;
  std::size_t power = 1;
  std::string name;
};

/// F ≅ S^n with S simple; throws InputError when F is not characteristically simple.
SimpleDecomposition decompose_char_simple(const FiniteGroup& f, const Limits& limits = default_limits());

/// Short name for a small simple group: C<p>, A5, PSL(2,7), A6, or simple(<order>).
std::string simple_group_name(const FiniteGroup& s);

struct CharSeries {
  std::vector<SubgroupHandle> chain;
  std::vector<FiniteGroup> factors;
  std::vector<SimpleDecomposition> decompositions;
};

CharSeries characteristic_series(const FiniteGroup& g, const Limits& limits = default_limits());

SubgroupHandle solvable_radical(const FiniteGroup& g, const Limits& limits = default_limits());

/// Aut-style wreath set {(a_1 x ... x a_n) o sigma} acting on S^n, with members
/// built on demand. Coordinates follow direct_power's indexing.
class WreathAutGroup {
 public:
  WreathAutGroup(const FiniteGroup& s, std::size_t n, const AutSet& base, const Limits& limits = default_limits());

  const FiniteGroup& power() const { return power_; }
  std::size_t degree() const { return n_; }
  /// |base|^n * n!
  BigInt size() const;

  /// sigma(x)_j = x_{sigma^{-1}(j)}, then coordinate j is mapped by base[alphas[j]].
  Automorphism element(const std::vector<std::size_t>& alphas, const std::vector<std::size_t>& sigma) const;
  Automorphism sample(std::mt19937_64& rng) const;
  /// Fully enumerated AutSet; throws CapExceeded above the AutSet cap.
  AutSet enumerate(const Limits& limits = default_limits()) const;

 private:
  FiniteGroup s_;
  std::size_t n_;
  AutSet base_;
  FiniteGroup power_;
};

}  // namespace wfl
