// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wfl/bounds.hpp"
#include "wfl/cli.hpp"
#include "wfl/verify.hpp"

using namespace wfl;
using Dec = boost::multiprecision::cpp_dec_float_100;

namespace {

// time limits per criterion, seconds
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 600.0;
constexpr double kLimit3 = 600.0;
constexpr double kLimit4 = 600.0;
constexpr double kLimit5 = 60.0;
constexpr double kLimit6 = 1800.0;
constexpr double kLimit7 = 60.0;
constexpr double kLimit8 = 600.0;
constexpr double kLimit9 = 600.0;
// relative tolerance for the log-space threshold against the decimal oracle
const Dec kLnTolerance("1e-30");

const char* kGroups[] = {"cyc:4", "prod:(cyc:2)x(cyc:2)", "cyc:6", "sym:3", "dih:4", "q8", "dih:5", "alt:4"};
const char* kWords[] = {"x1^2", "x1^3", "x1 x2 x1", "[x1,x2]"};

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string criterion1() {
  ReducedWord w = parse_word("x1^2");
  for (std::size_t o : {3, 5, 7, 9}) {
    CheckReport r = check_dihedral_counterexample(o);
    std::uint64_t pg = oracle::pi(make_group("dih:" + std::to_string(o)), w);
    std::uint64_t pn = oracle::pi(make_group("cyc:" + std::to_string(o)), w);
    std::uint64_t pq = oracle::pi(make_group("cyc:2"), w);
    std::string tag = "o=" + std::to_string(o);
    require(pg == o + 1 && pn * pq == 2, tag + ": oracle disagrees with o+1 / 2");
    require(r.witness["Pi_G"] == str(pg), tag + ": Pi_G");
    require(r.witness["Pi_N_times_Pi_Q"] == str(pn * pq), tag + ": Pi_N*Pi_Q");
    require(r.outcome == Outcome::pass && r.witness["violation"] == true, tag + ": violation not confirmed");
  }
  return "o in {3,5,7,9}: Pi = o+1 > 2";
}

std::string criterion2() {
  std::size_t n = 0;
  for (const char* spec : kGroups) {
    FiniteGroup g = make_group(spec);
    for (const char* text : kWords) {
      ReducedWord w = parse_word(text);
      AutSet a = resolve_autset(g, "auto", w.length());
      CheckReport r = check_identity_maximal(g, w, a);
      require(r.outcome == Outcome::pass, std::string(spec) + " " + text);
      if (w.length() <= 3) {
        auto best = oracle::max_per_target(g, w, a.members());
        require(r.witness["identity_max"] == str(best[0]), std::string(spec) + " " + text + ": oracle");
      }
      ++n;
    }
  }
  return std::to_string(n) + " (G, w) pairs";
}

std::string criterion3() {
  const std::pair<const char*, const char*> pairs[] = {
      {"sym:3", "derived"}, {"dih:4", "center"}, {"dih:4", "char:4"}, {"alt:4", "derived"}, {"cyc:6", "char:3"}};
  const std::size_t expect[] = {3, 2, 4, 4, 3};
  std::size_t n = 0, k = 0;
  for (auto [spec, sel] : pairs) {
    FiniteGroup g = make_group(spec);
    SubgroupHandle sub = select_subgroup(g, sel);
    require(sub.order() == expect[k++], std::string(spec) + " " + sel + ": wrong subgroup");
    AutSet aut = automorphism_group(g);
    for (const char* text : kWords) {
      CheckReport r = check_submultiplicative(g, sub, parse_word(text), aut);
      require(r.outcome == Outcome::pass, std::string(spec) + "/" + sel + " " + text);
      ++n;
    }
  }
  return std::to_string(n) + " (G, N, w) triples";
}

std::string criterion4() {
  const std::pair<const char*, const char*> pairs[] = {{"dih:4", "center"}, {"sym:3", "derived"}, {"alt:4", "derived"}};
  std::size_t trials = 0, closed = 0;
  for (auto [spec, sel] : pairs) {
    FiniteGroup g = make_group(spec);
    SubgroupHandle n = select_subgroup(g, sel);
    for (const char* text : {"x1^2", "[x1,x2]", "x1 x2 x1"}) {
      CheckReport r = check_rewrite(g, n, parse_word(text), 100, 1);
      require(r.outcome == Outcome::pass, std::string(spec) + " " + text);
      trials += 100;
      if (std::string(text) == "[x1,x2]") {
        std::size_t c = r.counters["closed_form_checks"].get<std::size_t>();
        require(c == 100, std::string(spec) + ": closed form compared " + std::to_string(c) + " times");
        closed += c;
      }
    }
  }
  return std::to_string(trials) + " trials, " + std::to_string(closed) + " closed-form matches";
}

std::string criterion5() {
  ReducedWord comm = parse_word("[x1,x2]");
  require(variation_count(comm) == 16, "variation_count([x1,x2]) != 16");
  require(variations(comm).size() == 16, "enumerated count != 16");
  VariationWord good({{1, 2, 1}, {2, 1, 1}, {1, 1, -1}, {2, 1, -1}});
  VariationWord bad({{1, 3, 1}, {2, 1, 1}, {1, 2, -1}, {2, 2, -1}});
  require(is_variation(good, comm), "positive instance rejected");
  require(!is_variation(bad, comm), "negative instance accepted");
  std::size_t n = 0;
  for (const char* text : kWords) {
    ReducedWord w = parse_word(text);
    for (const auto& v : variations(w)) {
      require(project_variation(v) == w, std::string("projection of ") + format_variation(v));
      ++n;
    }
  }
  return std::to_string(n) + " variations round-tripped";
}

std::string criterion6() {
  FiniteGroup a5 = make_group("alt:5");
  ReducedWord w = parse_word("x1^2");
  // epsilon oracle: brute force over every variation's flattened word
  AutSet aut = automorphism_group(a5);
  BigRational eps = 0;
  for (const auto& v : distinct_flattened_variations(w)) {
    BigInt total = 1;
    for (std::size_t i = 0; i < v.variable_slots(); ++i) total *= 60;
    BigRational p(BigInt(static_cast<unsigned long>(oracle::max_any(a5, v, aut.members()))), total);
    p.canonicalize();
    if (p > eps) eps = p;
  }
  CheckReport one = check_variation_bound(a5, 1, w, {});
  require(one.witness["epsilon"] == to_string(eps), "epsilon " + one.witness["epsilon"].get<std::string>() +
                                                        " vs oracle " + to_string(eps));
  require(one.outcome == Outcome::pass, "n=1 fails");
  require(parse_rational(one.witness["p_w"].get<std::string>()) <= eps, "p_w(A5) > epsilon");
  require(eps <= BigRational(3599, 3600) && epsilon_upper_bound(60, 2) == BigRational(3599, 3600),
          "epsilon above 1 - 1/60^2");

  VariationBoundOptions s;
  s.mode = SearchMode::sample;
  s.samples = 1000;
  s.seed = 1;
  CheckReport two = check_variation_bound(a5, 2, w, s);
  require(two.witness["exponent"] == 1, "exponent for n=2 is not 1");
  require(two.outcome == Outcome::inconclusive_sampled, "n=2: " + to_string(two.outcome));
  return "epsilon = " + to_string(eps) + ", n=2 worst sampled " +
         two.witness["largest_sampled_proportion"].get<std::string>();
}

std::string criterion7() {
  require(m_constant(1, 1) == 341, "M(1,1) != 341");
  for (std::size_t d = 1; d <= 6; ++d)
    for (std::size_t l = 1; l <= 6; ++l) {
      BigInt b = BigInt(static_cast<unsigned long>(2 * l * (d + 1))), sum = 0, term = 1;
      for (std::size_t i = 0; i <= 2 * l + 2; ++i, term *= b) sum += term;
      require(m_constant(d, l) == sum, "M(" + std::to_string(d) + "," + std::to_string(l) + ")");
    }
  require(lie_rank_threshold(parse_word("[x1,x2]"), 1).threshold == Real(28800L), "Lie threshold l=4");
  require(lie_rank_threshold(parse_word("x1"), 1).threshold == Real(288L), "Lie threshold l=1");

  Dec expect = boost::multiprecision::log(Dec(256)) + Dec(5454);
  Dec got(alt_exclusion_threshold(parse_word("x1"), 1).ln_factorial_argument.to_string(60));
  Dec rel = boost::multiprecision::abs(got - expect) / expect;
  require(rel <= kLnTolerance, "ln argument off by " + rel.str(3));

  std::mt19937_64 rng(7);
  const char* words[] = {"x1", "x1^2", "[x1,x2]"};
  for (int t = 0; t < 1000; ++t) {
    auto pick = [&] {
      unsigned long den = 2 + rng() % 10000;
      BigRational r(1 + rng() % (den - 1), den);
      r.canonicalize();
      return r;
    };
    BigRational a = pick(), b = pick();
    if (a > b) std::swap(a, b);
    ReducedWord w = parse_word(words[t % 3]);
    require(compare(alt_exclusion_threshold(w, a).threshold, alt_exclusion_threshold(w, b).threshold) >= 0,
            "alt threshold not monotone at " + to_string(a) + ", " + to_string(b));
    require(lie_rank_threshold(w, a).threshold >= lie_rank_threshold(w, b).threshold,
            "Lie threshold not monotone at " + to_string(a) + ", " + to_string(b));
  }
  return "relative error " + rel.str(3) + ", 1000 rho pairs";
}

std::string criterion8() {
  std::size_t n = 0;
  for (const char* spec : kGroups) {
    FiniteGroup g = make_group(spec);
    AutSet id = identity_autset(g), inn = inner_automorphisms(g), aut = automorphism_group(g);
    for (const char* text : kWords) {
      ReducedWord w = parse_word(text);
      BigInt pi = pi_w(g, w).value;
      BigInt p_id = max_fiber(g, w, id, {}).value;
      BigInt p_inn = max_fiber(g, w, inn, {}).value;
      BigInt p_aut = max_fiber(g, w, aut, {}).value;
      require(pi == BigInt(static_cast<unsigned long>(oracle::pi(g, w))), std::string(spec) + " " + text + ": Pi");
      require(pi == p_id && p_id <= p_inn && p_inn <= p_aut, std::string(spec) + " " + text + ": chain broken");
      ++n;
    }
  }
  FiniteGroup d6 = make_group("dih:3"), s3 = make_group("sym:3");
  require(is_isomorphic(d6, s3), "D6 and S3 not isomorphic");
  for (const char* text : kWords) {
    ReducedWord w = parse_word(text);
    require(max_fiber(d6, w, automorphism_group(d6), {}).value == max_fiber(s3, w, automorphism_group(s3), {}).value,
            std::string("D6 vs S3 ") + text);
  }
  return std::to_string(n) + " chains Pi <= P(id) <= P(Inn) <= P(Aut), D6 ~ S3 invariant";
}

std::string criterion9() {
  const std::vector<std::vector<std::string>> commands{
      {"word", "parse", "-w", "[x1,x2]"},
      {"word", "variations", "-w", "[x1,x2]"},
      {"word", "mconst", "-d", "2", "-l", "3"},
      {"group", "make", "-g", "q8", "--table"},
      {"group", "auts", "-g", "alt:4"},
      {"group", "subgroups", "-g", "sym:4"},
      {"group", "series", "-g", "sym:4"},
      {"group", "radical", "-g", "prod:(alt:5)x(cyc:2)"},
      {"fiber", "dist", "-g", "dih:4", "-w", "x1 x2 x1", "--tuple", "1,2,3"},
      {"fiber", "pi", "-g", "alt:4", "-w", "[x1,x2]"},
      {"fiber", "max", "-g", "alt:4", "-w", "x1 x2 x1", "--auts", "aut"},
      {"verify", "identity-max", "-g", "q8", "-w", "[x1,x2]"},
      {"verify", "submult", "-g", "alt:4", "--subgroup", "derived", "-w", "x1^3"},
      {"verify", "dihedral", "--o", "9"},
      {"verify", "rewrite", "-g", "dih:4", "--subgroup", "center", "-w", "[x1,x2]"},
      {"verify", "variation-bound", "-g", "alt:5", "-w", "x1^2"},
      {"verify", "variation-projection", "-g", "sym:3", "-w", "[x1,x2]"},
      {"bounds", "exclude", "-w", "x1", "--rho", "1/2"},
      {"bounds", "alt", "-w", "[x1,x2]", "--rho", "1/3"},
      {"bounds", "lie", "-w", "x1^2", "--rho", "1/5"},
      {"bounds", "n0", "-w", "x1^2", "--rho", "1/2", "--s-order", "60"},
      {"bounds", "radical-bound", "-w", "x1", "--rho", "1/2", "--factors", "60:120", "--n0-cap", "60"},
  };
  for (const auto& c : commands) {
    std::string outs[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      std::vector<std::string> args{"--no-cache", "--threads", k ? "4" : "1"};
      args.insert(args.end(), c.begin(), c.end());
      std::ostringstream out, err;
      codes[k] = run_command(args, out, err);
      outs[k] = out.str();
    }
    std::string name = c[0] + " " + c[1];
    require(codes[0] == kExitOk, name + ": exit " + std::to_string(codes[0]));
    require(codes[0] == codes[1] && outs[0] == outs[1], name + ": output differs between 1 and 4 threads");
  }
  return std::to_string(commands.size()) + " commands byte-identical at 1 and 4 threads";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::function<std::string()>, double>> criteria{
      {criterion1, kLimit1}, {criterion2, kLimit2}, {criterion3, kLimit3}, {criterion4, kLimit4}, {criterion5, kLimit5},
      {criterion6, kLimit6}, {criterion7, kLimit7}, {criterion8, kLimit8}, {criterion9, kLimit9}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = criteria[i].first();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > criteria[i].second) {
      ok = false;
      detail += " (over the " + std::to_string(static_cast<int>(criteria[i].second)) + " s limit)";
    }
    failed += !ok;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << " [" << secs << " s] " << detail;
    std::cout << line.str() << std::endl;
  }
  return failed ? 1 : 0;
}
