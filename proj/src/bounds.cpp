#include "wfl/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wfl {

namespace {

constexpr mpfr_prec_t kPrec = Real::kDefaultPrecision;
constexpr mpfr_prec_t kMaxPrec = 1 << 20;

Real neg_inf() {
  Real r(Bits{kPrec});
  mpfr_set_inf(r.get(), -1);
  return r;
}

Real ln_of(long v) { return ln(BigInt(v), kPrec); }

Real constant_ln2() {
  Real r(Bits{kPrec});
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

Real constant_ln10() { return ln_of(10); }

BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

bool fits_ulong(const BigInt& v) { return v >= 0 && mpz_fits_ulong_p(v.get_mpz_t()) != 0; }

/// Estimated decimal digits of exp(ln_value).
double digit_estimate(const Real& ln_value) { return (ln_value / constant_ln10()).to_double(); }

/// ceil(coeff * e^x) for an integer x, when the result is small enough to hold.
std::optional<BigInt> exact_ceiling_exp(const BigInt& coeff, const BigInt& x, const Real& ln_value) {
  if (digit_estimate(ln_value) > static_cast<double>(kExactDigitsCap)) return std::nullopt;
  widen_exponent_range();
  double bits = (ln_value / constant_ln2()).to_double();
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(0.0, bits)) + 64 +
                     static_cast<mpfr_prec_t>(mpz_sizeinbase(x.get_mpz_t(), 2));
  while (prec <= kMaxPrec) {
    Real xr(x, prec);
    Real lo(Bits{prec}), hi(Bits{prec});
    mpfr_exp(lo.get(), xr.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), xr.get(), MPFR_RNDU);
    mpfr_mul_z(lo.get(), lo.get(), coeff.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), hi.get(), coeff.get_mpz_t(), MPFR_RNDU);
    BigInt a = ceil_to_int(lo);
    BigInt b = ceil_to_int(hi);
    if (a == b) return a;
    prec *= 2;
  }
  throw Error("could not resolve ceiling at maximum precision");
}

/// ln(x!) for x = e^L, L large (Stirling; the dropped terms are below e^{-L}).
LogNumber factorial_from_ln(const Real& big_l) {
  widen_exponent_range();
  Real half(Bits{kPrec});
  mpfr_set_d(half.get(), 0.5, MPFR_RNDN);
  Real two_pi(Bits{kPrec});
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
  Real ln_two_pi = ln(two_pi);
  Real x = exp(big_l);
  Real l_minus_1 = big_l - Real(1L);
  if (x.is_finite()) {
    // (x + 1/2) L - x + 1/2 ln(2 pi)
    Real value = x * l_minus_1 + half * (big_l + ln_two_pi);
    return LogNumber::from_ln(value);
  }
  return LogNumber::from_ln_ln(big_l + ln(l_minus_1));
}

LogNumber power_of_inverse(const BigRational& rho, const BigInt& e) {
  if (rho == 1) return LogNumber::from_exact(BigRational(1));
  BigInt p = rho.get_num();
  BigInt q = rho.get_den();
  double digits = e.get_d() * static_cast<double>(mpz_sizeinbase(q.get_mpz_t(), 10));
  if (fits_ulong(e) && digits <= static_cast<double>(kExactDigitsCap)) {
    unsigned long k = e.get_ui();
    BigRational v(pow_ui(q, k), pow_ui(p, k));
    v.canonicalize();
    return LogNumber::from_exact(v);
  }
  mpfr_prec_t prec = kPrec + static_cast<mpfr_prec_t>(mpz_sizeinbase(e.get_mpz_t(), 2));
  Real lninv = ln(BigRational(q, p), prec);
  return LogNumber::from_ln(Real(e, prec) * lninv);
}

BigInt lie_constant(std::size_t a, std::size_t l) {
  BigInt t = BigInt(static_cast<unsigned long>(a + 1)) * BigInt(static_cast<unsigned long>(l));
  return 72 * t * t;
}

}  // namespace

void check_rho(const BigRational& rho) {
  if (rho <= 0 || rho > 1) throw InputError("rho must satisfy 0 < rho <= 1");
}

LogNumber LogNumber::from_exact(const BigRational& v) {
  LogNumber n;
  n.exact = v;
  if (v > 0) {
    Real l = wfl::ln(v, kPrec);
    if (l.sign() > 0) n.ln_ln = wfl::ln(l);
    n.ln = std::move(l);
  }
  return n;
}

LogNumber LogNumber::from_ln(const Real& ln_value) {
  LogNumber n;
  n.ln = ln_value;
  if (ln_value.sign() > 0) n.ln_ln = wfl::ln(ln_value);
  return n;
}

LogNumber LogNumber::from_ln_ln(const Real& ln_ln_value) {
  LogNumber n;
  n.ln_ln = ln_ln_value;
  return n;
}

bool LogNumber::is_one() const { return exact && *exact == 1; }

int compare(const LogNumber& a, const LogNumber& b) {
  if (a.exact && b.exact) return cmp(*a.exact, *b.exact);
  if (a.ln && b.ln) return *a.ln < *b.ln ? -1 : (*b.ln < *a.ln ? 1 : 0);
  auto ll = [](const LogNumber& v) {
    if (v.ln_ln) return *v.ln_ln;
    return neg_inf();  // value <= 1
  };
  Real la = ll(a), lb = ll(b);
  return la < lb ? -1 : (lb < la ? 1 : 0);
}

std::string describe(const LogNumber& v, int digits) {
  if (v.factorial_of) return "(" + describe(*v.factorial_of, digits) + ")!";
  if (v.exact && mpz_sizeinbase(v.exact->get_num().get_mpz_t(), 10) <= 40) return to_string(*v.exact);
  if (v.ln) return "exp(" + v.ln->to_string(digits) + ")";
  if (v.ln_ln) return "exp(exp(" + v.ln_ln->to_string(digits) + "))";
  return "?";
}

AltExclusionThreshold alt_exclusion_threshold(const ReducedWord& w, const BigRational& rho) {
  check_rho(rho);
  std::size_t l = w.length();
  if (l == 0) throw InputError("the word must be nonempty");
  AltExclusionThreshold out;
  out.m_prime = m_prime(l);
  BigInt x = 16 * out.m_prime * BigInt(static_cast<unsigned long>(l)) - 2;
  mpfr_prec_t prec = kPrec + static_cast<mpfr_prec_t>(mpz_sizeinbase(x.get_mpz_t(), 2));
  Real ln_arg = ln(BigInt(256), prec) + Real(16L, prec) * ln(BigInt(static_cast<unsigned long>(l)), prec) +
                Real(x, prec);
  out.ln_factorial_argument = ln_arg;

  BigInt coeff = 256 * pow_ui(BigInt(static_cast<unsigned long>(l)), 16);
  if (auto n = exact_ceiling_exp(coeff, x, ln_arg)) {
    out.factorial_argument = LogNumber::from_exact(BigRational(*n));
    LogNumber f = LogNumber::from_ln(ln_factorial(Real(*n, prec)));
    f.factorial_of = std::make_shared<LogNumber>(out.factorial_argument);
    out.term_factorial = std::move(f);
  } else {
    out.factorial_argument = LogNumber::from_ln(ln_arg);
    LogNumber f = factorial_from_ln(ln_arg);
    f.factorial_of = std::make_shared<LogNumber>(out.factorial_argument);
    out.term_factorial = std::move(f);
  }
  out.term_rho = power_of_inverse(rho, 16 * out.m_prime);
  out.threshold = compare(out.term_factorial, out.term_rho) >= 0 ? out.term_factorial : out.term_rho;
  return out;
}

LieRankThreshold lie_rank_threshold(const ReducedWord& w, const BigRational& rho) {
  check_rho(rho);
  std::size_t l = w.length();
  if (l == 0) throw InputError("the word must be nonempty");
  LieRankThreshold out;
  out.term_const = lie_constant(l, l);
  if (rho == 1) {
    out.term_rho = Real(0L);
  } else {
    Real log2inv = ln(BigRational(rho.get_den(), rho.get_num()), kPrec) / constant_ln2();
    out.term_rho = sqrt(Real(out.term_const) * log2inv);
  }
  out.threshold = max(Real(out.term_const), out.term_rho);
  return out;
}

AltSimpleBound simple_group_bound_alt(const ReducedWord& w) {
  std::size_t l = w.length();
  if (l == 0) throw InputError("the word must be nonempty");
  std::size_t d = w.distinct_vars();
  AltSimpleBound out;
  out.m = m_constant(d, l);
  BigInt x = 16 * out.m * BigInt(static_cast<unsigned long>(d)) - 2;
  mpfr_prec_t prec = kPrec + static_cast<mpfr_prec_t>(mpz_sizeinbase(x.get_mpz_t(), 2));
  Real ln_n = ln(BigInt(256), prec) + Real(16L, prec) * ln(BigInt(static_cast<unsigned long>(l)), prec) +
              Real(x, prec);
  out.n_threshold = LogNumber::from_ln(ln_n);
  out.n_min = exact_ceiling_exp(256 * pow_ui(BigInt(static_cast<unsigned long>(l)), 16), x, ln_n);
  out.exponent = BigRational(static_cast<unsigned long>(d)) - BigRational(1, 16 * out.m);
  out.exponent.canonicalize();
  return out;
}

LieSimpleBound simple_group_bound_lie(const ReducedWord& w) {
  std::size_t l = w.length();
  if (l == 0) throw InputError("the word must be nonempty");
  std::size_t d = w.distinct_vars();
  LieSimpleBound out;
  out.rank_threshold = lie_constant(d, l);
  BigInt den = 72 * BigInt(static_cast<unsigned long>(d + 1)) * BigInt(static_cast<unsigned long>(l * l));
  out.exponent = BigRational(static_cast<unsigned long>(d)) - BigRational(1, den);
  out.exponent.canonicalize();
  return out;
}

BigRational epsilon_upper_bound(const BigInt& s_order, std::size_t l) {
  if (s_order < 60) throw InputError("a nonabelian simple group has order at least 60");
  if (l == 0) throw InputError("the word must be nonempty");
  BigRational r(1, pow_ui(s_order, l));
  return BigRational(1) - r;
}

BigInt n0_bound(const ReducedWord& w, const BigRational& rho, const BigInt& s_order) {
  check_rho(rho);
  std::size_t l = w.length();
  if (l == 0) throw InputError("the word must be nonempty");
  if (s_order < 2) throw InputError("|S| must be at least 2");
  if (rho == 1) return 0;
  BigInt sl = pow_ui(s_order, l);
  BigInt l2(static_cast<unsigned long>(l * l));

  for (mpfr_prec_t prec = kPrec; prec <= (1 << 16); prec *= 2) {
    // log(1 - 1/|S|^l), enclosed in [den_lo, den_hi] (both negative).
    Real t_lo(Bits{prec}), t_hi(Bits{prec}), den_lo(Bits{prec}), den_hi(Bits{prec});
    mpfr_set_z(t_lo.get(), sl.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(t_hi.get(), sl.get_mpz_t(), MPFR_RNDU);
    // -1/t: smallest when t is smallest
    mpfr_si_div(den_lo.get(), -1, t_lo.get(), MPFR_RNDD);
    mpfr_si_div(den_hi.get(), -1, t_hi.get(), MPFR_RNDU);
    mpfr_log1p(den_lo.get(), den_lo.get(), MPFR_RNDD);
    mpfr_log1p(den_hi.get(), den_hi.get(), MPFR_RNDU);

    Real r_lo(rho, prec, MPFR_RNDD), r_hi(rho, prec, MPFR_RNDU);
    Real num_lo(Bits{prec}), num_hi(Bits{prec});
    mpfr_log(num_lo.get(), r_lo.get(), MPFR_RNDD);
    mpfr_log(num_hi.get(), r_hi.get(), MPFR_RNDU);
    // magnitudes
    Real a_lo(Bits{prec}), a_hi(Bits{prec}), b_lo(Bits{prec}), b_hi(Bits{prec});
    mpfr_neg(a_lo.get(), num_hi.get(), MPFR_RNDD);
    mpfr_neg(a_hi.get(), num_lo.get(), MPFR_RNDU);
    mpfr_mul_z(a_lo.get(), a_lo.get(), l2.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(a_hi.get(), a_hi.get(), l2.get_mpz_t(), MPFR_RNDU);
    mpfr_neg(b_lo.get(), den_hi.get(), MPFR_RNDD);
    mpfr_neg(b_hi.get(), den_lo.get(), MPFR_RNDU);
    if (b_lo.sign() <= 0) continue;
    Real v_lo(Bits{prec}), v_hi(Bits{prec});
    mpfr_div(v_lo.get(), a_lo.get(), b_hi.get(), MPFR_RNDD);
    mpfr_div(v_hi.get(), a_hi.get(), b_lo.get(), MPFR_RNDU);
    BigInt f_lo = floor_to_int(v_lo);
    BigInt f_hi = floor_to_int(v_hi);
    if (f_lo == f_hi) return f_lo;
    if (f_hi == f_lo + 1 && prec * 2 > (1 << 16)) {
      // value >= k  <=>  (1 - 1/|S|^l)^k >= rho^{l^2}
      if (!fits_ulong(f_hi) || f_hi.get_ui() > 100000) break;
      unsigned long k = f_hi.get_ui();
      unsigned long e = static_cast<unsigned long>(l * l);
      BigRational lhs(pow_ui(sl - 1, k), pow_ui(sl, k));
      BigRational rhs(pow_ui(rho.get_num(), e), pow_ui(rho.get_den(), e));
      return lhs >= rhs ? f_hi : f_lo;
    }
  }
  throw Error("could not resolve the floor in n0");
}

RadicalIndexBound radical_index_bound(const std::vector<SimpleFactorCandidate>& factors, const ReducedWord& w,
                                      const BigRational& rho, const BigInt& n0_cap, const BigRational& eta0) {
  check_rho(rho);
  if (eta0 <= 0) throw InputError("eta0 must be positive");
  if (w.length() == 0) throw InputError("the word must be nonempty");
  RadicalIndexBound out;
  Real total(0L);
  bool exact_ok = true;
  for (const auto& f : factors) {
    if (f.order < 60) throw InputError("candidate order " + to_string(f.order) + " is not a nonabelian simple order");
    if (f.aut_order < f.order) throw InputError("|Aut(S)| must be at least |S|");
    bool ok = f.order <= n0_cap;
    if (!ok && rho < 1) {
      // |S| <= rho^{-1/eta0}  <=>  |S|^a p^b <= q^b  for eta0 = a/b
      const BigInt& a = eta0.get_num();
      const BigInt& b = eta0.get_den();
      double bits = a.get_d() * static_cast<double>(mpz_sizeinbase(f.order.get_mpz_t(), 2));
      if (fits_ulong(a) && fits_ulong(b) && bits < 4e6) {
        BigInt lhs = pow_ui(f.order, a.get_ui()) * pow_ui(rho.get_num(), b.get_ui());
        ok = lhs <= pow_ui(rho.get_den(), b.get_ui());
      } else {
        Real lhs = Real(eta0) * ln(f.order);
        ok = lhs <= ln(BigRational(rho.get_den(), rho.get_num()));
      }
    }
    if (!ok) {
      throw InputError("candidate order " + to_string(f.order) + " exceeds max{N0, rho^(-1/eta0)}");
    }
    BigInt n0 = n0_bound(w, rho, f.order);
    out.n0.push_back(n0);
    total = total + Real(n0) * ln(f.aut_order) + ln_factorial(Real(n0));
    if (!fits_ulong(n0)) exact_ok = false;
  }
  if (exact_ok && digit_estimate(total) <= static_cast<double>(kExactDigitsCap)) {
    BigInt v = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      unsigned long k = out.n0[i].get_ui();
      BigInt fact;
      mpz_fac_ui(fact.get_mpz_t(), k);
      v *= pow_ui(factors[i].aut_order, k) * fact;
    }
    out.bound = LogNumber::from_exact(BigRational(v));
  } else {
    out.bound = LogNumber::from_ln(total);
  }
  return out;
}

ExclusionReport excluded_factors_report(const ReducedWord& w, const BigRational& rho) {
  check_rho(rho);
  if (w.length() == 0) throw InputError("the word must be nonempty");
  ExclusionReport r;
  r.length = w.length();
  r.arity = w.distinct_vars();
  r.rho = rho;
  r.m = m_constant(r.arity, r.length);
  r.m_prime = m_prime(r.length);
  r.alt = alt_exclusion_threshold(w, rho);
  r.lie = lie_rank_threshold(w, rho);
  r.alt_simple = simple_group_bound_alt(w);
  r.lie_simple = simple_group_bound_lie(w);

  std::ostringstream a;
  a << "Alt_m is excluded as a composition factor of any G with P_w^(Aut)(G) >= rho when |Alt_m| > "
    << describe(r.alt.threshold) << ".";
  std::ostringstream b;
  b << "Classical groups of Lie type of untwisted rank above " << r.lie.threshold.to_string(12)
    << " are excluded.";
  std::ostringstream c;
  c << "Single simple groups: P_w(Alt_n) <= |Alt_n|^(" << to_string(r.alt_simple.exponent) << ") once n >= "
    << describe(r.alt_simple.n_threshold) << "; P_w(S) <= |S|^(" << to_string(r.lie_simple.exponent)
    << ") for classical S of untwisted rank >= " << to_string(r.lie_simple.rank_threshold) << ".";
  r.narrative = {
      a.str(),
      b.str(),
      "Sporadic groups are never excluded by these bounds.",
      "Lie type groups of bounded rank over arbitrary fields and finitely many alternating groups remain possible.",
      c.str(),
  };
  return r;
}

}  // namespace wfl
