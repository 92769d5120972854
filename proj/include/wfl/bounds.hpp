#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wfl/real.hpp"
#include "wfl/words.hpp"

namespace wfl {

/// Values above this many decimal digits are kept in log space only.
inline constexpr std::size_t kExactDigitsCap = 10000;

/// A positive number that may be astronomically large: exact when small enough,
/// otherwise through its natural log (or, beyond MPFR's range, its iterated log).
struct LogNumber {
  std::optional<BigRational> exact;
  std::optional<Real> ln;
  /// ln(ln(value)); meaningful only when value > 1.
  std::optional<Real> ln_ln;
  /// Set when the value is n! ; n itself may only be known in log space.
  std::shared_ptr<const LogNumber> factorial_of;

  static LogNumber from_exact(const BigRational& v);
  static LogNumber from_ln(const Real& ln_value);
  static LogNumber from_ln_ln(const Real& ln_ln_value);

  bool is_one() const;
};

/// -1, 0, 1 as a <, =, > b.
int compare(const LogNumber& a, const LogNumber& b);

/// Short human-readable form, e.g. "exp(5.46e3)" or "n!".
std::string describe(const LogNumber& v, int digits = 12);

struct AltExclusionThreshold {
  BigInt m_prime;
  /// ln(256 l^16 e^{16 M' l - 2})
  Real ln_factorial_argument;
  /// ceil(256 l^16 e^{16 M' l - 2})
  LogNumber factorial_argument;
  LogNumber term_factorial;
  LogNumber term_rho;
  LogNumber threshold;
};

/// max{ ceil(256 l^16 e^{16M'l-2})!, rho^{-16M'} }
AltExclusionThreshold alt_exclusion_threshold(const ReducedWord& w, const BigRational& rho);

struct LieRankThreshold {
  BigInt term_const;
  Real term_rho;
  Real threshold;
};

/// max{ 72(l+1)^2 l^2, sqrt(72(l+1)^2 l^2 log2(1/rho)) }
LieRankThreshold lie_rank_threshold(const ReducedWord& w, const BigRational& rho);

struct AltSimpleBound {
  BigInt m;
  /// 256 l^16 e^{16 M d - 2}
  LogNumber n_threshold;
  /// ceil of n_threshold when it has at most kExactDigitsCap digits
  std::optional<BigInt> n_min;
  BigRational exponent;
};

/// P_w(Alt_n) <= |Alt_n|^{d - 1/(16M)} for n >= 256 l^16 e^{16Md-2}
AltSimpleBound simple_group_bound_alt(const ReducedWord& w);

struct LieSimpleBound {
  BigInt rank_threshold;
  BigRational exponent;
};

/// P_w(S) <= |S|^{d - 1/(72(d+1)l^2)} for untwisted rank >= 72(d+1)^2 l^2
LieSimpleBound simple_group_bound_lie(const ReducedWord& w);

/// 1 - 1/|S|^l
BigRational epsilon_upper_bound(const BigInt& s_order, std::size_t l);

/// floor(l^2 log(rho) / log(1 - 1/|S|^l)), resolved by interval arithmetic.
BigInt n0_bound(const ReducedWord& w, const BigRational& rho, const BigInt& s_order);

struct SimpleFactorCandidate {
  BigInt order;
  BigInt aut_order;
};

struct RadicalIndexBound {
  LogNumber bound;
  std::vector<BigInt> n0;  // per candidate
};

/// prod_S |Aut(S)|^{n0} * n0!  over the caller's candidate list, whose orders must
/// not exceed max{N0, rho^{-1/eta0}}.
RadicalIndexBound radical_index_bound(const std::vector<SimpleFactorCandidate>& factors, const ReducedWord& w,
                                      const BigRational& rho, const BigInt& n0_cap, const BigRational& eta0);

struct ExclusionReport {
  std::size_t length = 0;
  std::size_t arity = 0;
  BigRational rho;
  BigInt m;
  BigInt m_prime;
  AltExclusionThreshold alt;
  LieRankThreshold lie;
  AltSimpleBound alt_simple;
  LieSimpleBound lie_simple;
  std::vector<std::string> narrative;
};

ExclusionReport excluded_factors_report(const ReducedWord& w, const BigRational& rho);

/// Throws InputError unless 0 < rho <= 1.
void check_rho(const BigRational& rho);

}  // namespace wfl
