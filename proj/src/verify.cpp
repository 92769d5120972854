#include "wfl/verify.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "wfl/bounds.hpp"

namespace wfl {

using nlohmann::json;

namespace {

json indices_json(const std::vector<std::size_t>& v) { return json(v); }
json elems_json(std::span<const Elem> v) { return json(std::vector<Elem>(v.begin(), v.end())); }

BigInt int_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt space_size(std::size_t order, std::size_t d) { return int_pow(BigInt(static_cast<unsigned long>(order)), d); }

void require_inner(const AutSet& a) {
  if (!a.contains_inner()) throw InputError("the automorphism set must contain Inn(G)");
}

/// Maps G's numbering to N's (or -1 outside N).
std::vector<Elem> subgroup_index(const FiniteGroup& g, const SubgroupHandle& n) {
  std::vector<Elem> index(g.order(), static_cast<Elem>(-1));
  for (std::size_t i = 0; i < n.elements.size(); ++i) index[n.elements[i]] = static_cast<Elem>(i);
  return index;
}

Automorphism restrict_conj(const FiniteGroup& g, const SubgroupHandle& n, const std::vector<Elem>& index, Elem c,
                           const Automorphism& alpha) {
  std::vector<Elem> map(n.order());
  for (std::size_t k = 0; k < n.order(); ++k) {
    Elem y = g.conj(c, alpha(n.elements[k]));
    if (index[y] == static_cast<Elem>(-1)) throw InputError("N is not invariant under the automorphisms");
    map[k] = index[y];
  }
  return Automorphism(std::move(map));
}

bool is_plain_commutator(const ReducedWord& w) {
  return w.length() == 4 && w[0].var == 1 && w[0].sign == 1 && w[1].var == 2 && w[1].sign == 1 && w[2].var == 1 &&
         w[2].sign == -1 && w[3].var == 2 && w[3].sign == -1;
}

std::string format_tuple(const AutSet& a, const std::vector<std::size_t>& idx) {
  std::string s;
  for (auto i : idx) s += (s.empty() ? "" : ",") + std::to_string(i);
  (void)a;
  return s;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass:
      return "pass";
    case Outcome::fail:
      return "fail";
    case Outcome::inconclusive_sampled:
      return "inconclusive-sampled";
  }
  return "?";
}

json CheckReport::to_json() const {
  return json{{"claim", claim},
              {"parameters", parameters},
              {"outcome", to_string(outcome)},
              {"witness", witness},
              {"counters", counters}};
}

AutSet resolve_autset(const FiniteGroup& g, const std::string& policy, std::size_t length, const Limits& limits) {
  if (policy == "id") return identity_autset(g);
  if (policy == "inn") return inner_automorphisms(g);
  if (policy == "aut") return automorphism_group(g, limits);
  if (policy == "auto") {
    AutSet full = automorphism_group(g, limits);
    BigInt tuples = int_pow(BigInt(static_cast<unsigned long>(full.size())), length);
    if (tuples > 1000000) return inner_automorphisms(g);
    return full;
  }
  throw InputError("unknown automorphism policy '" + policy + "' (expected aut, inn, id or auto)");
}

CheckReport check_identity_maximal(const FiniteGroup& g, const ReducedWord& w, const AutSet& a, const Limits& limits) {
  require_inner(a);
  CheckReport r;
  r.claim = "identity-max";
  r.parameters = {{"group", g.spec()}, {"word", format_word(w)}, {"auts", to_string(a.kind())},
                  {"aut_set_size", a.size()}};
  TargetMaxima m = max_fiber_per_target(g, w, a, limits);
  r.outcome = Outcome::pass;
  r.witness["identity_max"] = to_string(BigInt(static_cast<unsigned long>(m.best[0])));
  r.witness["identity_tuple"] = indices_json(decode_tuple(m.best_tuple[0], a.size(), w.length()));
  std::uint64_t overall = *std::max_element(m.best.begin(), m.best.end());
  r.witness["overall_max"] = to_string(BigInt(static_cast<unsigned long>(overall)));
  for (Elem x = 0; x < g.order(); ++x) {
    if (m.best[x] > m.best[0]) {
      r.outcome = Outcome::fail;
      r.witness["counterexample"] = {
          {"target", x},
          {"value", to_string(BigInt(static_cast<unsigned long>(m.best[x])))},
          {"tuple", indices_json(decode_tuple(m.best_tuple[x], a.size(), w.length()))}};
      break;
    }
  }
  r.counters = {{"tuples", m.tuples}, {"evaluations", m.evaluations}};
  return r;
}

CheckReport check_submultiplicative(const FiniteGroup& g, const SubgroupHandle& n, const ReducedWord& w,
                                    const AutSet& a, const Limits& limits) {
  require_inner(a);
  if (!is_invariant(n.elements, a)) throw InputError("N is not invariant under A");
  CheckReport r;
  r.claim = "submult";
  r.parameters = {{"group", g.spec()},        {"subgroup", elems_json(n.elements)},
                  {"word", format_word(w)},    {"auts", to_string(a.kind())},
                  {"aut_set_size", a.size()}};
  QuotientHandle q = quotient(g, n);
  AutSet ind = induced_autset(g, n, q, a);
  AutSet res = restricted_autset(g, n, a);
  FiniteGroup ng = subgroup_group(g, n);

  TargetMaxima mg = max_fiber_per_target(g, w, a, limits);
  TargetMaxima mq = max_fiber_per_target(q.quotient, w, ind, limits);
  TargetMaxima mn = max_fiber_per_target(ng, w, res, limits);

  auto str = [](std::uint64_t v) { return to_string(BigInt(static_cast<unsigned long>(v))); };
  r.outcome = Outcome::pass;
  const std::uint64_t n1 = mn.best[0];
  for (Elem x = 0; x < g.order(); ++x) {
    BigInt rhs = BigInt(static_cast<unsigned long>(mq.best[q.projection[x]])) * static_cast<unsigned long>(n1);
    if (BigInt(static_cast<unsigned long>(mg.best[x])) > rhs) {
      r.outcome = Outcome::fail;
      r.witness["counterexample"] = {
          {"part", 1},
          {"target", x},
          {"lhs", str(mg.best[x])},
          {"rhs", to_string(rhs)},
          {"tuple", indices_json(decode_tuple(mg.best_tuple[x], a.size(), w.length()))}};
      break;
    }
  }
  std::uint64_t pg = *std::max_element(mg.best.begin(), mg.best.end());
  std::uint64_t pq = *std::max_element(mq.best.begin(), mq.best.end());
  std::uint64_t pn = *std::max_element(mn.best.begin(), mn.best.end());
  BigInt prod = BigInt(static_cast<unsigned long>(pq)) * static_cast<unsigned long>(pn);
  if (r.outcome == Outcome::pass && BigInt(static_cast<unsigned long>(pg)) > prod) {
    r.outcome = Outcome::fail;
    r.witness["counterexample"] = {{"part", 3}, {"lhs", str(pg)}, {"rhs", to_string(prod)}};
  }
  r.witness["P_G"] = str(pg);
  r.witness["P_quotient"] = str(pq);
  r.witness["P_N"] = str(pn);
  r.witness["P_N_identity"] = str(n1);
  r.witness["quotient_order"] = q.quotient.order();
  r.witness["induced_size"] = ind.size();
  r.witness["restricted_size"] = res.size();
  r.counters = {{"tuples", mg.tuples + mq.tuples + mn.tuples},
                {"evaluations", mg.evaluations + mq.evaluations + mn.evaluations}};
  return r;
}

CheckReport check_dihedral_counterexample(std::size_t o, const Limits& limits) {
  if (o < 3 || o % 2 == 0) throw InputError("the dihedral check needs an odd o >= 3");
  FiniteGroup g = make_group("dih:" + std::to_string(o), limits);
  std::vector<Elem> rotations(o);
  for (std::size_t k = 0; k < o; ++k) rotations[k] = static_cast<Elem>(k);
  SubgroupHandle n = make_subgroup(g, rotations, limits);
  if (!n.normal) throw std::logic_error("rotation subgroup is not normal");
  QuotientHandle q = quotient(g, n);
  FiniteGroup ng = subgroup_group(g, n);
  ReducedWord w = parse_word("x1^2");
  PiResult pg = pi_w(g, w, limits);
  PiResult pn = pi_w(ng, w, limits);
  PiResult pq = pi_w(q.quotient, w, limits);
  BigInt prod = pn.value * pq.value;

  CheckReport r;
  r.claim = "dihedral";
  r.parameters = {{"o", o}, {"word", format_word(w)}};
  r.outcome = pg.value > prod ? Outcome::pass : Outcome::fail;
  r.witness = {{"Pi_G", to_string(pg.value)},
               {"Pi_N", to_string(pn.value)},
               {"Pi_Q", to_string(pq.value)},
               {"Pi_N_times_Pi_Q", to_string(prod)},
               {"expected_Pi_G", std::to_string(o + 1)},
               {"G_target", pg.witness_target},
               {"violation", pg.value > prod}};
  r.counters = {{"evaluations", g.order() + ng.order() + q.quotient.order()}};
  return r;
}

AutTuple commutator_rewrite_closed_form(const FiniteGroup& g, const SubgroupHandle& n, const AutTuple& auts,
                                        std::span<const Elem> base) {
  if (auts.size() != 4 || base.size() != 2) throw InputError("closed form needs four automorphisms and two base elements");
  auto index = subgroup_index(g, n);
  Elem a1 = auts[0](base[0]);
  Elem a2 = auts[1](base[1]);
  Elem a3i = g.inv(auts[2](base[0]));
  Elem a4i = g.inv(auts[3](base[1]));
  Elem c2 = a1;
  Elem c3 = g.mul(g.mul(a1, a2), a3i);
  Elem c4 = g.mul(c3, a4i);
  return {restrict_conj(g, n, index, 0, auts[0]), restrict_conj(g, n, index, c2, auts[1]),
          restrict_conj(g, n, index, c3, auts[2]), restrict_conj(g, n, index, c4, auts[3])};
}

CheckReport check_rewrite(const FiniteGroup& g, const SubgroupHandle& n, const ReducedWord& w, std::size_t trials,
                          std::uint64_t seed, const Limits& limits) {
  if (w.length() == 0) throw InputError("the word must be nonempty");
  AutSet aut = automorphism_group(g, limits);
  if (!is_invariant(n.elements, aut)) throw InputError("N is not characteristic");
  const std::size_t d = w.variable_slots();
  BigInt per_trial = space_size(n.order(), d);
  if (per_trial * static_cast<unsigned long>(std::max<std::size_t>(trials, 1)) >
      BigInt(static_cast<unsigned long>(limits.budget)))
    throw CapExceeded("rewrite check exceeds the evaluation budget");
  FiniteGroup ng = subgroup_group(g, n);
  const bool commutator = is_plain_commutator(w);

  CheckReport r;
  r.claim = "rewrite";
  r.parameters = {{"group", g.spec()}, {"subgroup", elems_json(n.elements)}, {"word", format_word(w)},
                  {"trials", trials}, {"seed", seed}};
  r.outcome = Outcome::pass;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_aut(0, aut.size() - 1);
  std::uniform_int_distribution<Elem> pick_elem(0, static_cast<Elem>(g.order() - 1));
  std::uint64_t evaluations = 0, closed_form_checks = 0;
  const std::uint64_t sweep = per_trial.get_ui();

  for (std::size_t t = 0; t < trials && r.outcome == Outcome::pass; ++t) {
    std::vector<std::size_t> idx(w.length());
    for (auto& i : idx) i = pick_aut(rng);
    AutTuple auts = tuple_from_indices(aut, idx);
    std::vector<Elem> base(d);
    for (auto& b : base) b = pick_elem(rng);
    Elem target = eval_automorphic(g, w, auts, base);
    AutTuple beta = rewrite_coset_equation(g, n, w, auts, base, target);

    if (commutator) {
      AutTuple closed = commutator_rewrite_closed_form(g, n, auts, base);
      ++closed_form_checks;
      if (closed != beta) {
        r.outcome = Outcome::fail;
        r.witness["counterexample"] = {{"trial", t}, {"reason", "beta differs from the closed form"},
                                       {"tuple", indices_json(idx)}, {"base", elems_json(base)}};
        break;
      }
    }

    std::vector<Elem> nn(d, 0), shifted(d);
    for (std::uint64_t k = 0; k < sweep; ++k) {
      std::uint64_t rest = k;
      for (std::size_t j = d; j-- > 0;) {
        nn[j] = static_cast<Elem>(rest % n.order());
        rest /= n.order();
      }
      for (std::size_t j = 0; j < d; ++j) shifted[j] = g.mul(n.elements[nn[j]], base[j]);
      bool lhs = eval_automorphic(g, w, auts, shifted) == target;
      bool rhs = eval_automorphic(ng, w, beta, nn) == kIdentity;
      evaluations += 2;
      if (lhs != rhs) {
        r.outcome = Outcome::fail;
        std::vector<Elem> n_in_g(d);
        for (std::size_t j = 0; j < d; ++j) n_in_g[j] = n.elements[nn[j]];
        r.witness["counterexample"] = {{"trial", t},          {"tuple", indices_json(idx)},
                                       {"base", elems_json(base)}, {"target", target},
                                       {"n", elems_json(n_in_g)},  {"lhs", lhs},
                                       {"rhs", rhs}};
        break;
      }
    }
  }
  r.counters = {{"trials", trials}, {"evaluations", evaluations}, {"closed_form_checks", closed_form_checks}};
  return r;
}

std::vector<ReducedWord> distinct_flattened_variations(const ReducedWord& w) {
  std::vector<ReducedWord> out;
  std::set<std::vector<std::pair<int, int>>> seen;
  VariationEnumerator it(w);
  while (auto v = it.next()) {
    std::vector<std::pair<int, int>> key;
    for (const auto& l : v->flattened().letters()) key.emplace_back(l.var, l.sign);
    if (seen.insert(key).second) out.push_back(v->flattened());
  }
  return out;
}

CheckReport check_variation_bound(const FiniteGroup& s, std::size_t n, const ReducedWord& w,
                                  const VariationBoundOptions& options, const Limits& limits) {
  if (n == 0) throw InputError("n must be positive");
  if (w.length() == 0) throw InputError("the word must be nonempty");
  if (s.is_abelian() || !is_simple(s, limits)) throw InputError("S must be a nonabelian simple group");
  if (options.epsilon_scale <= 0) throw InputError("epsilon scale must be positive");
  AutSet aut = automorphism_group(s, limits);
  const std::size_t l = w.length();

  CheckReport r;
  r.claim = "variation-bound";
  r.parameters = {{"group", s.spec()},
                  {"n", n},
                  {"word", format_word(w)},
                  {"exponent_rounding", options.use_floor ? "floor" : "ceil"},
                  {"epsilon_scale", to_string(options.epsilon_scale)}};

  // eps(S, w): exact over every distinct flattened variation.
  BigRational eps = 0;
  std::string eps_word;
  std::uint64_t evaluations = 0;
  auto flats = distinct_flattened_variations(w);
  MaxFiberOptions exact;
  for (const auto& v : flats) {
    MaxFiberResult m = max_fiber(s, v, aut, exact, limits);
    evaluations += m.evaluations;
    if (m.proportion > eps) {
      eps = m.proportion;
      eps_word = format_word(v);
    }
  }
  BigRational upper = epsilon_upper_bound(BigInt(static_cast<unsigned long>(s.order())), l);
  BigRational eps_used = eps * options.epsilon_scale;
  eps_used.canonicalize();
  std::size_t l2 = l * l;
  std::size_t e = options.use_floor ? n / l2 : (n + l2 - 1) / l2;
  BigRational bound(int_pow(eps_used.get_num(), e), int_pow(eps_used.get_den(), e));
  bound.canonicalize();

  r.witness["epsilon"] = to_string(eps);
  r.witness["epsilon_word"] = eps_word;
  r.witness["epsilon_upper_bound"] = to_string(upper);
  r.witness["epsilon_within_upper_bound"] = eps <= upper;
  r.witness["variations"] = to_string(variation_count(w));
  r.witness["distinct_flattened"] = flats.size();
  r.witness["exponent"] = e;
  r.witness["bound"] = to_string(bound);

  bool violated = false;
  if (eps > upper) {
    violated = true;
    r.witness["counterexample"] = {{"reason", "epsilon exceeds 1 - 1/|S|^l"}};
  }
  auto exceeds = [&](const BigInt& count, const BigInt& space) { return BigRational(count, space) > bound; };

  if (!violated && n == 1 && options.mode == SearchMode::exact) {
    MaxFiberResult m = max_fiber(s, w, aut, exact, limits);
    evaluations += m.evaluations;
    r.witness["p_w"] = to_string(m.proportion);
    r.witness["p_w_tuple"] = indices_json(m.witness_indices);
    r.witness["p_w_target"] = m.witness_target;
    if (exceeds(m.value, space_size(s.order(), w.variable_slots()))) {
      violated = true;
      r.witness["counterexample"] = {{"tuple", indices_json(m.witness_indices)},
                                     {"target", m.witness_target},
                                     {"proportion", to_string(m.proportion)}};
    }
    r.outcome = violated ? Outcome::fail : Outcome::pass;
    r.parameters["mode"] = "exact";
    r.counters = {{"evaluations", evaluations}, {"tuples", m.tuples_examined}};
    return r;
  }

  // Sampled tuples over S^n from the wreath construction; the identity tuple first.
  WreathAutGroup wreath(s, n, aut, limits);
  const FiniteGroup& power = wreath.power();
  BigInt space = space_size(power.order(), w.variable_slots());
  if (space * static_cast<unsigned long>(options.samples) > BigInt(static_cast<unsigned long>(limits.budget)))
    throw CapExceeded("sampled variation check exceeds the evaluation budget");
  std::mt19937_64 rng(options.seed);
  BigRational worst = 0;
  std::uint64_t examined = 0;
  for (std::uint64_t k = 0; k < options.samples && !violated; ++k) {
    AutTuple tuple;
    if (k == 0) {
      tuple = identity_tuple(power, l);
    } else {
      for (std::size_t i = 0; i < l; ++i) tuple.push_back(wreath.sample(rng));
    }
    FiberDistribution dist = fiber_distribution(power, w, tuple, limits);
    ++examined;
    evaluations += space.get_ui();
    BigInt top(static_cast<unsigned long>(dist.max_count()));
    BigRational prop(top, space);
    prop.canonicalize();
    if (prop > worst) worst = prop;
    if (exceeds(top, space)) {
      violated = true;
      r.witness["counterexample"] = {{"sample", k}, {"target", dist.argmax()}, {"proportion", to_string(prop)}};
    }
  }
  r.witness["largest_sampled_proportion"] = to_string(worst);
  r.outcome = violated ? Outcome::fail : Outcome::inconclusive_sampled;
  r.parameters["mode"] = "sample";
  r.parameters["samples"] = options.samples;
  r.parameters["seed"] = options.seed;
  r.counters = {{"evaluations", evaluations}, {"tuples", examined}};
  return r;
}

CheckReport check_variation_projection(const FiniteGroup& g, const ReducedWord& w, const Limits& limits) {
  if (w.length() == 0) throw InputError("the word must be nonempty");
  AutSet aut = automorphism_group(g, limits);
  CheckReport r;
  r.claim = "variation-projection";
  r.parameters = {{"group", g.spec()}, {"word", format_word(w)}};
  r.outcome = Outcome::pass;
  json hits = json::array();
  BigInt full = space_size(g.order(), w.variable_slots());
  for (const auto& v : distinct_flattened_variations(w)) {
    auto idx = find_constant_tuple(g, v, aut, limits);
    if (!idx) continue;
    // Identifying the split variables keeps the map constant, so the same tuple works for w.
    AutTuple tuple = tuple_from_indices(aut, *idx);
    FiberDistribution dist = fiber_distribution(g, w, tuple, limits);
    bool ok = BigInt(static_cast<unsigned long>(dist.max_count())) == full;
    hits.push_back({{"variation", format_word(v)}, {"tuple", format_tuple(aut, *idx)}, {"p_w_is_one", ok}});
    if (!ok) {
      r.outcome = Outcome::fail;
      r.witness["counterexample"] = {{"variation", format_word(v)}, {"tuple", indices_json(*idx)}};
      break;
    }
  }
  r.witness["constant_variations"] = hits;
  r.counters = {{"variations_with_p_one", hits.size()}};
  return r;
}

}  // namespace wfl
