#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wfl/automorphism.hpp"
#include "wfl/group.hpp"
#include "wfl/subgroup.hpp"
#include "wfl/words.hpp"

namespace wfl {

/// One automorphism per letter of the word it is used with.
using AutTuple = std::vector<Automorphism>;

AutTuple identity_tuple(const FiniteGroup& g, std::size_t length);

Elem eval_word(const FiniteGroup& g, const ReducedWord& w, std::span<const Elem> args);
Elem eval_automorphic(const FiniteGroup& g, const ReducedWord& w, const AutTuple& auts, std::span<const Elem> args);

struct FiberDistribution {
  std::vector<std::uint64_t> counts;
  std::size_t group_order = 0;
  std::size_t arity = 0;

  std::uint64_t max_count() const;
  /// Smallest target with the largest fiber.
  Elem argmax() const;
};

/// Exact fiber sizes by enumerating all of G^d.
FiberDistribution fiber_distribution(const FiniteGroup& g, const ReducedWord& w, const AutTuple& auts,
                                     const Limits& limits = default_limits());

struct PiResult {
  BigInt value;
  BigRational proportion;
  Elem witness_target = 0;
};

/// Largest fiber of the plain word map.
PiResult pi_w(const FiniteGroup& g, const ReducedWord& w, const Limits& limits = default_limits());

enum class SearchMode { exact, sample };
enum class ResultStatus { exact, lower_bound };

struct MaxFiberResult {
  BigInt value;
  BigRational proportion;
  std::vector<std::size_t> witness_indices;  // positions in the AutSet
  AutTuple witness_tuple;
  Elem witness_target = 0;
  ResultStatus status = ResultStatus::exact;
  std::uint64_t tuples_examined = 0;
  std::uint64_t evaluations = 0;
  std::optional<std::uint64_t> seed;
};

struct MaxFiberOptions {
  std::optional<Elem> target;  // nullopt = any target
  SearchMode mode = SearchMode::exact;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
};

/// P_w^{(A)}(G, g) (target set) or P_w^{(A)}(G) (any target). Ties go to the
/// lexicographically least (tuple indices, target).
MaxFiberResult max_fiber(const FiniteGroup& g, const ReducedWord& w, const AutSet& a, const MaxFiberOptions& options,
                         const Limits& limits = default_limits());

/// Per-target maxima over all tuples from A^l.
struct TargetMaxima {
  std::vector<std::uint64_t> best;         // P_w^{(A)}(G, g) per g
  std::vector<std::uint64_t> best_tuple;   // mixed-radix index of the earliest tuple attaining it
  std::uint64_t tuples = 0;
  std::uint64_t evaluations = 0;
};

TargetMaxima max_fiber_per_target(const FiniteGroup& g, const ReducedWord& w, const AutSet& a,
                                  const Limits& limits = default_limits());

/// Tuple index -> member indices (first letter most significant).
std::vector<std::size_t> decode_tuple(std::uint64_t index, std::size_t set_size, std::size_t length);
AutTuple tuple_from_indices(const AutSet& a, const std::vector<std::size_t>& indices);

/// A tuple from A^l making the automorphic word map constant, if any.
std::optional<std::vector<std::size_t>> find_constant_tuple(const FiniteGroup& g, const ReducedWord& w,
                                                            const AutSet& a, const Limits& limits = default_limits());

/// The rewritten tuple beta on N: for all n in N^d,
///   w^(auts)(n_1 g_1, ..., n_d g_d) = target  <=>  w_N^(beta)(n_1, ..., n_d) = 1.
/// beta_i is conj(c_i) o alpha_i restricted to N, c_i the product of the first
/// i-1 factors alpha_j(g_{iota(j)})^{e_j} (e_i = +1) or of the first i (e_i = -1).
AutTuple rewrite_coset_equation(const FiniteGroup& g, const SubgroupHandle& n, const ReducedWord& w,
                                const AutTuple& auts, std::span<const Elem> base, Elem target);

}  // namespace wfl
