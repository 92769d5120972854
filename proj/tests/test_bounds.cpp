#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <random>

#include "wfl/bounds.hpp"

using namespace wfl;
using Dec = boost::multiprecision::cpp_dec_float_100;

namespace {

Dec dec(const Real& r) { return Dec(r.to_string(60)); }
Dec dec(const BigInt& v) { return Dec(to_string(v)); }
Dec dec(const BigRational& v) { return Dec(to_string(v.get_num())) / Dec(to_string(v.get_den())); }

bool close(const Dec& a, const Dec& b, const Dec& rel) {
  Dec scale = boost::multiprecision::max(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
  return boost::multiprecision::abs(a - b) <= rel * scale;
}

BigRational random_rho(std::mt19937_64& rng) {
  unsigned long den = 2 + rng() % 1000;
  unsigned long num = 1 + rng() % (den - 1);
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("LogNumber comparison and description") {
  LogNumber a = LogNumber::from_exact(BigRational(1000));
  LogNumber b = LogNumber::from_ln(Real(10L));
  LogNumber c = LogNumber::from_ln_ln(Real(100L));
  CHECK(compare(a, b) < 0);
  CHECK(compare(b, c) < 0);
  CHECK(compare(c, a) > 0);
  CHECK(compare(a, a) == 0);
  CHECK(LogNumber::from_exact(BigRational(1)).is_one());
  CHECK(describe(a) == "1000");
  CHECK(describe(b, 3).rfind("exp(", 0) == 0);
  CHECK(describe(c, 3).rfind("exp(exp(", 0) == 0);
}

TEST_CASE("alternating threshold for x1") {
  AltExclusionThreshold t = alt_exclusion_threshold(parse_word("x1"), BigRational(1));
  CHECK(t.m_prime == 341);
  Dec expect = boost::multiprecision::log(Dec(256)) + Dec(5454);
  CHECK(close(dec(t.ln_factorial_argument), expect, Dec("1e-30")));

  REQUIRE(t.factorial_argument.exact.has_value());
  Dec n_oracle = Dec(256) * boost::multiprecision::exp(Dec(5454));
  CHECK(close(dec(t.factorial_argument.exact->get_num()), n_oracle, Dec("1e-40")));

  // Stirling in the oracle; the dropped 1/(12n) is invisible at this size
  Dec pi = boost::math::constants::pi<Dec>();
  Dec ln_n = boost::multiprecision::log(n_oracle);
  Dec ln_fact = n_oracle * ln_n - n_oracle + boost::multiprecision::log(2 * pi * n_oracle) / 2;
  REQUIRE(t.term_factorial.ln.has_value());
  CHECK(close(dec(*t.term_factorial.ln), ln_fact, Dec("1e-30")));
  REQUIRE(t.term_factorial.factorial_of);
  CHECK(t.term_rho.is_one());
  CHECK(compare(t.threshold, t.term_factorial) == 0);

  AltExclusionThreshold half = alt_exclusion_threshold(parse_word("x1"), BigRational(1, 2));
  REQUIRE(half.term_rho.exact.has_value());
  BigInt two_5456;
  mpz_ui_pow_ui(two_5456.get_mpz_t(), 2, 5456);
  CHECK(*half.term_rho.exact == BigRational(two_5456));
  CHECK(compare(half.threshold, half.term_factorial) == 0);
}

TEST_CASE("alternating threshold for longer words stays in log space") {
  AltExclusionThreshold t = alt_exclusion_threshold(parse_word("[x1,x2]"), BigRational(1, 3));
  // M' = M(4,4) = sum_{i<=10} 40^i
  BigInt m = 0, p = 1;
  for (int i = 0; i <= 10; ++i) {
    m += p;
    p *= 40;
  }
  CHECK(t.m_prime == m);
  CHECK_FALSE(t.factorial_argument.exact.has_value());
  Dec x = Dec(16) * dec(m) * 4 - 2;
  Dec expect = boost::multiprecision::log(Dec(256)) + 16 * boost::multiprecision::log(Dec(4)) + x;
  CHECK(close(dec(t.ln_factorial_argument), expect, Dec("1e-30")));
  REQUIRE(t.term_factorial.ln_ln.has_value());
  // ln ln (n!) ~ L + ln(L - 1) with L = ln n
  Dec ll = expect + boost::multiprecision::log(expect - 1);
  CHECK(close(dec(*t.term_factorial.ln_ln), ll, Dec("1e-25")));
  REQUIRE(t.term_rho.ln.has_value());
  CHECK(close(dec(*t.term_rho.ln), Dec(16) * dec(m) * boost::multiprecision::log(Dec(3)), Dec("1e-30")));
  CHECK(compare(t.threshold, t.term_factorial) == 0);
}

TEST_CASE("Lie rank threshold") {
  LieRankThreshold x1 = lie_rank_threshold(parse_word("x1"), BigRational(1));
  CHECK(x1.term_const == 288);
  CHECK(x1.threshold == Real(288L));
  LieRankThreshold comm = lie_rank_threshold(parse_word("[x1,x2]"), BigRational(1));
  CHECK(comm.term_const == 28800);

  // rho = 2^-288 makes both terms equal 288
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, 288);
  LieRankThreshold eq = lie_rank_threshold(parse_word("x1"), BigRational(BigInt(1), den));
  CHECK(close(dec(eq.term_rho), Dec(288), Dec("1e-40")));
  CHECK(close(dec(eq.threshold), Dec(288), Dec("1e-40")));

  LieRankThreshold tiny = lie_rank_threshold(parse_word("x1"), BigRational(BigInt(1), den * den));
  Dec oracle = boost::multiprecision::sqrt(Dec(288) * 576);
  CHECK(close(dec(tiny.threshold), oracle, Dec("1e-40")));
}

TEST_CASE("simple group bounds") {
  AltSimpleBound a = simple_group_bound_alt(parse_word("x1"));
  CHECK(a.m == 341);
  CHECK(a.exponent == BigRational(5455, 5456));
  REQUIRE(a.n_min.has_value());
  CHECK(close(dec(*a.n_min), Dec(256) * boost::multiprecision::exp(Dec(5454)), Dec("1e-40")));

  AltSimpleBound c = simple_group_bound_alt(parse_word("[x1,x2]"));
  BigInt m = 0, p = 1;
  for (int i = 0; i <= 10; ++i) {
    m += p;
    p *= 24;
  }
  CHECK(c.m == m);
  CHECK(c.exponent == BigRational(2) - BigRational(BigInt(1), 16 * m));
  CHECK_FALSE(c.n_min.has_value());

  LieSimpleBound l1 = simple_group_bound_lie(parse_word("x1"));
  CHECK(l1.rank_threshold == 288);
  CHECK(l1.exponent == BigRational(143, 144));
  LieSimpleBound l2 = simple_group_bound_lie(parse_word("[x1,x2]"));
  CHECK(l2.rank_threshold == 10368);
  CHECK(l2.exponent == BigRational(2) - BigRational(1, 3456));
}

TEST_CASE("epsilon upper bound") {
  CHECK(epsilon_upper_bound(60, 1) == BigRational(59, 60));
  CHECK(epsilon_upper_bound(60, 2) == BigRational(3599, 3600));
  CHECK(epsilon_upper_bound(168, 3) == BigRational(168 * 168 * 168 - 1, 168 * 168 * 168));
  CHECK_THROWS_AS(epsilon_upper_bound(59, 1), InputError);
  CHECK_THROWS_AS(epsilon_upper_bound(60, 0), InputError);
}

TEST_CASE("n0 against a decimal oracle") {
  auto oracle = [](std::size_t l, const BigRational& rho, const BigInt& s) {
    Dec sl = boost::multiprecision::pow(dec(s), static_cast<int>(l));
    Dec v = Dec(l * l) * boost::multiprecision::log(dec(rho)) / boost::multiprecision::log(1 - 1 / sl);
    return BigInt(boost::multiprecision::floor(v).convert_to<std::string>());
  };
  CHECK(n0_bound(parse_word("x1^2"), BigRational(1, 2), 60) == oracle(2, BigRational(1, 2), 60));
  CHECK(n0_bound(parse_word("x1"), BigRational(1, 2), 60) == oracle(1, BigRational(1, 2), 60));
  CHECK(n0_bound(parse_word("x1"), BigRational(1), 60) == 0);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    BigRational rho = random_rho(rng);
    BigInt s = 60 + static_cast<unsigned long>(rng() % 100000);
    CHECK(n0_bound(parse_word("[x1,x2]"), rho, s) == oracle(4, rho, s));
  }
  CHECK_THROWS_AS(n0_bound(parse_word("x1"), BigRational(0), 60), InputError);
  CHECK_THROWS_AS(n0_bound(parse_word("x1"), BigRational(3, 2), 60), InputError);
}

TEST_CASE("thresholds are monotone in rho") {
  std::mt19937_64 rng(12);
  ReducedWord w = parse_word("x1^2");
  for (int t = 0; t < 1000; ++t) {
    BigRational a = random_rho(rng), b = random_rho(rng);
    if (a > b) std::swap(a, b);
    CHECK(compare(alt_exclusion_threshold(w, a).term_rho, alt_exclusion_threshold(w, b).term_rho) >= 0);
    CHECK(lie_rank_threshold(w, a).threshold >= lie_rank_threshold(w, b).threshold);
    if (t % 10 == 0) CHECK(n0_bound(w, a, 60) >= n0_bound(w, b, 60));
  }
}

TEST_CASE("exact values agree with their logs") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    BigRational rho = random_rho(rng);
    LogNumber v = alt_exclusion_threshold(parse_word("x1"), rho).term_rho;
    if (!v.exact) continue;
    REQUIRE(v.ln.has_value());
    Dec oracle = Dec(16 * 341) * boost::multiprecision::log(1 / dec(rho));
    CHECK(close(dec(*v.ln), oracle, Dec("1e-40")));
  }
}

TEST_CASE("radical index bound") {
  ReducedWord w = parse_word("x1");
  BigRational rho(1, 2);
  RadicalIndexBound r = radical_index_bound({{60, 120}}, w, rho, 60, BigRational(1));
  REQUIRE(r.n0.size() == 1);
  CHECK(r.n0[0] == n0_bound(w, rho, 60));
  unsigned long k = r.n0[0].get_ui();
  BigInt fact, power;
  mpz_fac_ui(fact.get_mpz_t(), k);
  mpz_ui_pow_ui(power.get_mpz_t(), 120, k);
  REQUIRE(r.bound.exact.has_value());
  CHECK(*r.bound.exact == BigRational(power * fact));

  // rho = 1 gives n0 = 0 and an empty product
  RadicalIndexBound one = radical_index_bound({{60, 120}, {168, 336}}, w, BigRational(1), 168, BigRational(1));
  CHECK(one.bound.is_one());

  // 168 > N0 = 60, but 168 <= (1/2)^{-1/eta0} for eta0 = 1/8 (2^8 = 256)
  CHECK_NOTHROW(radical_index_bound({{168, 336}}, w, rho, 60, BigRational(1, 8)));
  CHECK_THROWS_AS(radical_index_bound({{168, 336}}, w, rho, 60, BigRational(1, 7)), InputError);
  CHECK_THROWS_AS(radical_index_bound({{59, 120}}, w, rho, 60, BigRational(1)), InputError);
  CHECK_THROWS_AS(radical_index_bound({{60, 30}}, w, rho, 60, BigRational(1)), InputError);
  CHECK_THROWS_AS(radical_index_bound({{60, 120}}, w, rho, 60, BigRational(0)), InputError);

  RadicalIndexBound big = radical_index_bound({{60, 120}}, parse_word("[x1,x2]"), BigRational(1, 1000), 60,
                                              BigRational(1));
  REQUIRE(big.bound.ln.has_value());
  Dec n0 = dec(big.n0[0]);
  Dec pi = boost::math::constants::pi<Dec>();
  Dec ln_fact = n0 * boost::multiprecision::log(n0) - n0 + boost::multiprecision::log(2 * pi * n0) / 2 + 1 / (12 * n0);
  CHECK(close(dec(*big.bound.ln), n0 * boost::multiprecision::log(Dec(120)) + ln_fact, Dec("1e-30")));
}

TEST_CASE("exclusion report") {
  ExclusionReport r = excluded_factors_report(parse_word("x1"), BigRational(1));
  CHECK(r.length == 1);
  CHECK(r.arity == 1);
  CHECK(r.m == 341);
  CHECK(r.m_prime == 341);
  CHECK(r.lie.term_const == 288);
  bool sporadic = false;
  for (const auto& s : r.narrative) sporadic |= s.find("Sporadic") != std::string::npos;
  CHECK(sporadic);
  CHECK_THROWS_AS(excluded_factors_report(ReducedWord(), BigRational(1)), InputError);
  CHECK_THROWS_AS(check_rho(BigRational(0)), InputError);
  CHECK_NOTHROW(check_rho(BigRational(1)));
}
