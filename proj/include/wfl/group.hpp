#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wfl/common.hpp"

namespace wfl {

/// A finite group given by its full multiplication table. Identity is index 0.
class FiniteGroup {
 public:
  /// `table` is row-major: table[a * order + b] = a*b. Validates the group axioms
  /// (associativity exhaustively up to order 64, on 10^5 seeded random triples above).
  FiniteGroup(std::size_t order, std::vector<Elem> table, std::string spec);

  std::size_t order() const { return order_; }
  const std::string& spec() const { return spec_; }

  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv_[a], inv_[b])); }
  Elem pow(Elem a, long long e) const;

  std::span<const Elem> row(Elem a) const {
    return {table_.data() + static_cast<std::size_t>(a) * order_, order_};
  }
  const std::vector<Elem>& table() const { return table_; }

  std::size_t element_order(Elem a) const;
  std::vector<std::size_t> element_orders() const;
  bool is_abelian() const;

  /// Size of the conjugacy class of each element.
  std::vector<std::size_t> class_sizes() const;
  /// Class id per element, classes numbered by smallest member.
  std::vector<std::size_t> conjugacy_classes() const;
  std::vector<Elem> center() const;

 private:
  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::string spec_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// `cyc:n | sym:n | alt:n | dih:o | q8 | prod:(s1)x(s2)[x(s3)...] | pow:(s)^n | table:<path>`
FiniteGroup make_group(const std::string& spec, const Limits& limits = default_limits());

/// Element (a_1,...,a_k) is indexed a_1 + |G_1|(a_2 + |G_2|(...)).
FiniteGroup direct_product(const std::vector<const FiniteGroup*>& factors, std::string spec,
                           const Limits& limits = default_limits());
FiniteGroup direct_power(const FiniteGroup& g, std::size_t n, const Limits& limits = default_limits());

/// Cayley table file: order on line 1, then one row of the table per line.
FiniteGroup read_cayley_table(std::istream& in, std::string spec);
FiniteGroup load_cayley_table(const std::string& path);
void write_cayley_table(std::ostream& out, const FiniteGroup& g);

/// The group obtained by renaming element x to perm[x] (perm[0] must be 0).
FiniteGroup relabel(const FiniteGroup& g, const std::vector<Elem>& perm);

/// Subgroup generated by `gens`, as a sorted element list.
std::vector<Elem> generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);

/// Greedy generating set: repeatedly add the element enlarging the generated
/// subgroup most, ties broken by smallest index.
std::vector<Elem> greedy_generators(const FiniteGroup& g);

}  // namespace wfl
