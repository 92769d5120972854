#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "wfl/fibers.hpp"
#include "wfl/subgroup.hpp"
#include "wfl/words.hpp"

namespace wfl {

enum class Outcome { pass, fail, inconclusive_sampled };

/// "pass", "fail", "inconclusive-sampled"
std::string to_string(Outcome o);

struct CheckReport {
  std::string claim;
  nlohmann::json parameters = nlohmann::json::object();
  Outcome outcome = Outcome::pass;
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json counters = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// "aut", "inn", "id", or "auto" (Aut(G) unless |Aut(G)|^l exceeds 10^6, then Inn(G)).
AutSet resolve_autset(const FiniteGroup& g, const std::string& policy, std::size_t length,
                      const Limits& limits = default_limits());

/// P_w^(A)(G, g) <= P_w^(A)(G, 1) for every g.
CheckReport check_identity_maximal(const FiniteGroup& g, const ReducedWord& w, const AutSet& a,
                                   const Limits& limits = default_limits());

/// P_w^(A)(G, g) <= P_w^(ind A)(G/N, pi(g)) * P_w^(res A)(N, 1) for every g, and
/// P_w^(A)(G) <= P_w^(ind A)(G/N) * P_w^(res A)(N).
CheckReport check_submultiplicative(const FiniteGroup& g, const SubgroupHandle& n, const ReducedWord& w,
                                    const AutSet& a, const Limits& limits = default_limits());

/// Pi_w(D_2o) > Pi_w(C_o) * Pi_w(C_2) for w = x1^2, o odd >= 3.
CheckReport check_dihedral_counterexample(std::size_t o, const Limits& limits = default_limits());

/// beta for w = [x1,x2] written out term by term:
///   beta_1 = alpha_1, beta_2 = conj(alpha_1(g_1)) o alpha_2,
///   beta_3 = conj(alpha_1(g_1) alpha_2(g_2) alpha_3(g_1)^-1) o alpha_3,
///   beta_4 = conj(alpha_1(g_1) alpha_2(g_2) alpha_3(g_1)^-1 alpha_4(g_2)^-1) o alpha_4,
/// all restricted to N.
AutTuple commutator_rewrite_closed_form(const FiniteGroup& g, const SubgroupHandle& n, const AutTuple& auts,
                                        std::span<const Elem> base);

/// Random (auts from Aut(G), base, target) trials, each checked over all of N^d.
CheckReport check_rewrite(const FiniteGroup& g, const SubgroupHandle& n, const ReducedWord& w, std::size_t trials,
                          std::uint64_t seed, const Limits& limits = default_limits());

struct VariationBoundOptions {
  SearchMode mode = SearchMode::exact;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  /// floor(n/l^2) in the exponent instead of ceil(n/l^2)
  bool use_floor = false;
  /// multiplies epsilon before comparing (1 = the claim as stated)
  BigRational epsilon_scale = 1;
};

/// p_w(S^n) <= eps^{ceil(n/l^2)} with eps the largest p_{w'}(S) over variations w'.
CheckReport check_variation_bound(const FiniteGroup& s, std::size_t n, const ReducedWord& w,
                                  const VariationBoundOptions& options, const Limits& limits = default_limits());

/// p_{w'}(G) = 1 for a variation w' implies p_w(G) = 1.
CheckReport check_variation_projection(const FiniteGroup& g, const ReducedWord& w,
                                       const Limits& limits = default_limits());

/// Distinct flattened forms among the variations of w, in enumeration order.
std::vector<ReducedWord> distinct_flattened_variations(const ReducedWord& w);

}  // namespace wfl
