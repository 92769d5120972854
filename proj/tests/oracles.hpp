#pragma once

// Brute-force reference computations, independent of the library's search code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "wfl/automorphism.hpp"
#include "wfl/group.hpp"
#include "wfl/words.hpp"

namespace oracle {

using wfl::Elem;
using wfl::FiniteGroup;

/// Every bijection fixing 0 that respects multiplication.
inline std::size_t automorphism_count(const FiniteGroup& g) {
  std::vector<Elem> perm(g.order());
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::size_t count = 0;
  do {
    bool ok = true;
    for (Elem a = 0; a < g.order() && ok; ++a)
      for (Elem b = 0; b < g.order() && ok; ++b) ok = perm[g.mul(a, b)] == g.mul(perm[a], perm[b]);
    count += ok;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return count;
}

/// Every subset containing 0 and closed under multiplication (finite, so a subgroup).
inline std::vector<std::vector<Elem>> subgroups(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<Elem>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<Elem> s{0};
    for (std::size_t i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.push_back(static_cast<Elem>(i));
    std::vector<bool> in(n, false);
    for (auto x : s) in[x] = true;
    bool closed = true;
    for (auto a : s)
      for (auto b : s)
        if (!in[g.mul(a, b)]) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

inline Elem power(const FiniteGroup& g, Elem x, int sign) { return sign > 0 ? x : g.inv(x); }

/// Fiber sizes of the automorphic word map, by direct evaluation.
inline std::vector<std::uint64_t> fibers(const FiniteGroup& g, const wfl::ReducedWord& w,
                                         const std::vector<const wfl::Automorphism*>& auts) {
  const std::size_t d = w.variable_slots();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= g.order();
  std::vector<std::uint64_t> counts(g.order(), 0);
  std::vector<Elem> args(d);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    for (std::size_t j = 0; j < d; ++j) {
      args[j] = static_cast<Elem>(r % g.order());
      r /= g.order();
    }
    Elem v = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      Elem x = args[static_cast<std::size_t>(w[i].var - 1)];
      if (auts[i]) x = (*auts[i])(x);
      v = g.mul(v, power(g, x, w[i].sign));
    }
    ++counts[v];
  }
  return counts;
}

inline std::uint64_t pi(const FiniteGroup& g, const wfl::ReducedWord& w) {
  std::vector<const wfl::Automorphism*> none(w.length(), nullptr);
  auto c = fibers(g, w, none);
  return *std::max_element(c.begin(), c.end());
}

/// Per-target maximum over all tuples from `auts`.
inline std::vector<std::uint64_t> max_per_target(const FiniteGroup& g, const wfl::ReducedWord& w,
                                                 const std::vector<wfl::Automorphism>& auts) {
  std::vector<std::uint64_t> best(g.order(), 0);
  std::vector<std::size_t> idx(w.length(), 0);
  for (;;) {
    std::vector<const wfl::Automorphism*> t;
    for (auto i : idx) t.push_back(&auts[i]);
    auto c = fibers(g, w, t);
    for (std::size_t x = 0; x < c.size(); ++x) best[x] = std::max(best[x], c[x]);
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == auts.size()) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  return best;
}

inline std::uint64_t max_any(const FiniteGroup& g, const wfl::ReducedWord& w,
                             const std::vector<wfl::Automorphism>& auts) {
  auto b = max_per_target(g, w, auts);
  return *std::max_element(b.begin(), b.end());
}

}  // namespace oracle
