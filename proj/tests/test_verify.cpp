#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wfl/verify.hpp"

using namespace wfl;

namespace {

const char* kGroups[] = {"cyc:4", "prod:(cyc:2)x(cyc:2)", "cyc:6", "sym:3", "dih:4", "q8", "dih:5", "alt:4"};

std::string str(std::uint64_t v) { return std::to_string(v); }

}  // namespace

TEST_CASE("outcome names") {
  CHECK(to_string(Outcome::pass) == "pass");
  CHECK(to_string(Outcome::fail) == "fail");
  CHECK(to_string(Outcome::inconclusive_sampled) == "inconclusive-sampled");
}

TEST_CASE("autset policies") {
  FiniteGroup s4 = make_group("sym:4");
  CHECK(resolve_autset(s4, "aut", 2).size() == 24);
  CHECK(resolve_autset(s4, "inn", 2).size() == 24);
  CHECK(resolve_autset(s4, "id", 2).size() == 1);
  FiniteGroup c2c2 = make_group("prod:(cyc:2)x(cyc:2)");
  CHECK(resolve_autset(c2c2, "auto", 3).size() == 6);
  FiniteGroup c7 = make_group("cyc:7");
  CHECK(resolve_autset(c7, "auto", 8).size() == 1);  // 6^8 > 10^6, Inn(C7) is trivial
  CHECK_THROWS_AS(resolve_autset(s4, "outer", 2), InputError);
}

TEST_CASE("identity is the largest fiber") {
  for (const char* spec : kGroups) {
    FiniteGroup g = make_group(spec);
    for (const char* text : {"x1^2", "x1^3", "x1 x2 x1", "[x1,x2]"}) {
      ReducedWord w = parse_word(text);
      AutSet a = resolve_autset(g, "auto", w.length());
      CheckReport r = check_identity_maximal(g, w, a);
      CHECK(r.outcome == Outcome::pass);
      if (w.length() <= 3) {
        auto best = oracle::max_per_target(g, w, a.members());
        CHECK(r.witness["identity_max"] == str(best[0]));
        CHECK(r.witness["overall_max"] == str(*std::max_element(best.begin(), best.end())));
      }
    }
  }
  FiniteGroup s3 = make_group("sym:3");
  CHECK_THROWS_AS(check_identity_maximal(s3, parse_word("x1^2"), identity_autset(s3)), InputError);
}

TEST_CASE("submultiplicativity") {
  struct Case {
    const char* group;
    std::vector<Elem> (*pick)(const FiniteGroup&);
  };
  auto derived = [](const FiniteGroup& g) {
    std::vector<Elem> all(g.order());
    std::iota(all.begin(), all.end(), Elem{0});
    return derived_subgroup(g, all);
  };
  auto center = [](const FiniteGroup& g) { return g.center(); };
  std::vector<Case> cases{{"sym:3", derived}, {"alt:4", derived}, {"dih:4", center}, {"q8", center}};
  for (const auto& c : cases) {
    FiniteGroup g = make_group(c.group);
    SubgroupHandle n = make_subgroup(g, c.pick(g));
    AutSet aut = automorphism_group(g);
    QuotientHandle q = quotient(g, n);
    AutSet ind = induced_autset(g, n, q, aut);
    AutSet res = restricted_autset(g, n, aut);
    FiniteGroup ng = subgroup_group(g, n);
    for (const char* text : {"x1^2", "x1^3", "x1 x2 x1"}) {
      ReducedWord w = parse_word(text);
      CheckReport r = check_submultiplicative(g, n, w, aut);
      CHECK(r.outcome == Outcome::pass);
      std::uint64_t pg = oracle::max_any(g, w, aut.members());
      std::uint64_t pq = oracle::max_any(q.quotient, w, ind.members());
      std::uint64_t pn = oracle::max_any(ng, w, res.members());
      CHECK(r.witness["P_G"] == str(pg));
      CHECK(r.witness["P_quotient"] == str(pq));
      CHECK(r.witness["P_N"] == str(pn));
      CHECK(pg <= pq * pn);
    }
  }
  FiniteGroup d8 = make_group("dih:4");
  SubgroupHandle refl = make_subgroup(d8, {0, 4});
  CHECK_THROWS_AS(check_submultiplicative(d8, refl, parse_word("x1^2"), automorphism_group(d8)), InputError);
}

TEST_CASE("dihedral counterexample to the plain bound") {
  for (std::size_t o = 3; o <= 15; o += 2) {
    CheckReport r = check_dihedral_counterexample(o);
    CAPTURE(o);
    CHECK(r.outcome == Outcome::pass);
    ReducedWord w = parse_word("x1^2");
    std::uint64_t pg = oracle::pi(make_group("dih:" + std::to_string(o)), w);
    std::uint64_t pn = oracle::pi(make_group("cyc:" + std::to_string(o)), w);
    std::uint64_t pq = oracle::pi(make_group("cyc:2"), w);
    CHECK(pg == o + 1);
    CHECK(pn * pq == 2);
    CHECK(r.witness["Pi_G"] == str(pg));
    CHECK(r.witness["Pi_N_times_Pi_Q"] == str(pn * pq));
    CHECK(r.witness["violation"] == true);
  }
  CHECK_THROWS_AS(check_dihedral_counterexample(4), InputError);
  CHECK_THROWS_AS(check_dihedral_counterexample(1), InputError);
}

TEST_CASE("commutator rewrite matches the closed form") {
  FiniteGroup d8 = make_group("dih:4");
  SubgroupHandle z = make_subgroup(d8, d8.center());
  AutSet aut = automorphism_group(d8);
  ReducedWord w = parse_word("[x1,x2]");
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    AutTuple auts;
    for (int i = 0; i < 4; ++i) auts.push_back(aut[rng() % aut.size()]);
    std::vector<Elem> base{static_cast<Elem>(rng() % 8), static_cast<Elem>(rng() % 8)};
    Elem target = eval_automorphic(d8, w, auts, base);
    CHECK(rewrite_coset_equation(d8, z, w, auts, base, target) == commutator_rewrite_closed_form(d8, z, auts, base));
  }
}

TEST_CASE("rewrite check") {
  for (const char* spec : {"dih:4", "alt:4", "q8"}) {
    FiniteGroup g = make_group(spec);
    SubgroupHandle n = solvable_radical(g).order() == g.order() ? make_subgroup(g, g.center()) : solvable_radical(g);
    if (n.order() == 1 || n.order() == g.order()) {
      std::vector<Elem> all(g.order());
      std::iota(all.begin(), all.end(), Elem{0});
      n = make_subgroup(g, derived_subgroup(g, all));
    }
    for (const char* text : {"x1^2", "[x1,x2]", "x1 x2 x1"}) {
      CheckReport r = check_rewrite(g, n, parse_word(text), 25, 3);
      CHECK(r.outcome == Outcome::pass);
    }
  }
  FiniteGroup d8 = make_group("dih:4");
  CHECK(check_rewrite(d8, make_subgroup(d8, d8.center()), parse_word("[x1,x2]"), 10, 1).counters["closed_form_checks"] ==
        10);
  CHECK_THROWS_AS(check_rewrite(d8, make_subgroup(d8, {0, 4}), parse_word("x1^2"), 5, 1), InputError);
  Limits tight = default_limits();
  tight.budget = 10;
  CHECK_THROWS_AS(check_rewrite(d8, make_subgroup(d8, d8.center()), parse_word("x1^2"), 100, 1, tight), CapExceeded);
}

TEST_CASE("variation bound on A5") {
  FiniteGroup a5 = make_group("alt:5");
  ReducedWord w = parse_word("x1^2");
  CheckReport r = check_variation_bound(a5, 1, w, {});
  CHECK(r.outcome == Outcome::pass);
  CHECK(r.witness["epsilon"] == "4/15");
  CHECK(r.witness["p_w"] == "4/15");
  CHECK(r.witness["exponent"] == 1);
  CHECK(r.witness["epsilon_within_upper_bound"] == true);
  CHECK(parse_rational(r.witness["epsilon_upper_bound"].get<std::string>()) >= BigRational(3599, 3600));

  // sqrt-count oracle: g^2 = 1 has 16 solutions in A5 (identity + 15 involutions)
  std::uint64_t roots = 0;
  for (Elem g = 0; g < a5.order(); ++g) roots += a5.mul(g, g) == 0;
  CHECK(roots == 16);

  VariationBoundOptions half;
  half.epsilon_scale = BigRational(1, 2);
  CheckReport neg = check_variation_bound(a5, 1, w, half);
  CHECK(neg.outcome == Outcome::fail);
  CHECK(neg.witness.contains("counterexample"));

  VariationBoundOptions s;
  s.mode = SearchMode::sample;
  s.samples = 200;
  s.seed = 1;
  CheckReport two = check_variation_bound(a5, 2, w, s);
  CHECK(two.outcome == Outcome::inconclusive_sampled);
  CHECK(parse_rational(two.witness["largest_sampled_proportion"].get<std::string>()) <=
        parse_rational(two.witness["bound"].get<std::string>()));
  CHECK(two.to_json().dump() == check_variation_bound(a5, 2, w, s).to_json().dump());

  VariationBoundOptions fl;
  fl.use_floor = true;
  fl.mode = SearchMode::sample;
  fl.samples = 20;
  CHECK(check_variation_bound(a5, 2, w, fl).witness["exponent"] == 0);
}

TEST_CASE("distinct flattened variations") {
  auto sq = distinct_flattened_variations(parse_word("x1^2"));
  REQUIRE(sq.size() == 2);
  CHECK(sq[0] == parse_word("x1^2"));
  CHECK(sq[1] == parse_word("x1 x2"));
  CHECK(distinct_flattened_variations(parse_word("x1 x2 x3")).size() == 1);
  CHECK(distinct_flattened_variations(parse_word("x1^3")).size() == 5);
}

TEST_CASE("variation projection") {
  FiniteGroup c2 = make_group("cyc:2");
  CheckReport r = check_variation_projection(c2, parse_word("x1^2"));
  CHECK(r.outcome == Outcome::pass);
  CHECK(r.counters["variations_with_p_one"] == 1);
  for (const char* spec : {"sym:3", "prod:(cyc:2)x(cyc:2)"})
    for (const char* text : {"x1^2", "[x1,x2]"})
      CHECK(check_variation_projection(make_group(spec), parse_word(text)).outcome == Outcome::pass);
  CHECK(check_variation_projection(make_group("q8"), parse_word("x1^2")).outcome == Outcome::pass);
}

TEST_CASE("reports serialize") {
  nlohmann::json j = check_dihedral_counterexample(5).to_json();
  CHECK(j["claim"] == "dihedral");
  CHECK(j["outcome"] == "pass");
  CHECK(j.contains("witness"));
  CHECK(j.contains("parameters"));
  CHECK(j.contains("counters"));
}
