#include "wfl/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "wfl/fibers.hpp"
#include "wfl/verify.hpp"

namespace wfl {

using nlohmann::json;

namespace {

constexpr int kRealDigits = 60;

struct Options {
  std::string group;
  std::string word;
  std::string auts = "auto";
  std::string subgroup;
  std::string mode = "exact";
  std::string tuple;
  std::string target = "any";
  std::string rho = "1";
  std::string factors;
  std::string n0_cap = "0";
  std::string eta0 = "1";
  std::string manifest;
  std::string out_dir = "battery-out";
  std::string epsilon_scale = "1";
  std::string s_order = "60";
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  std::uint64_t n = 1;
  std::uint64_t o = 3;
  std::uint64_t d = 1;
  std::uint64_t l = 1;
  std::uint64_t limit = 1000;
  bool floor = false;
  bool table = false;
};

struct CommandResult {
  json result = json::object();
  std::string status = "ok";
  json stats = json::object();
  int exit_code = kExitOk;
};

struct Prepared {
  json params;
  std::function<CommandResult()> compute;
  bool cacheable = true;
};

std::string str(std::uint64_t v) { return std::to_string(v); }

SearchMode parse_mode(const std::string& m) {
  if (m == "exact") return SearchMode::exact;
  if (m == "sample") return SearchMode::sample;
  throw InputError("mode must be exact or sample");
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw InputError("expected a comma-separated list of indices, got '" + text + "'");
    out.push_back(std::stoull(part));
  }
  return out;
}

ReducedWord word_arg(const Options& o, bool nonempty = true) {
  if (o.word.empty() && nonempty) throw InputError("--word is required");
  return parse_word(o.word, nonempty);
}

FiniteGroup group_arg(const Options& o, const Limits& limits) {
  if (o.group.empty()) throw InputError("--group is required");
  return make_group(o.group, limits);
}

BigRational rho_arg(const Options& o) {
  BigRational r = parse_rational(o.rho);
  check_rho(r);
  return r;
}

CommandResult report_outcome(const CheckReport& r) {
  CommandResult out;
  out.result = r.to_json();
  out.status = to_string(r.outcome);
  out.stats = r.counters;
  out.exit_code = r.outcome == wfl::Outcome::fail ? kExitCheckFailed : kExitOk;
  return out;
}

json subgroup_json(const SubgroupHandle& h) {
  return {{"order", h.order()}, {"elements", h.elements}, {"normal", h.normal}, {"characteristic", h.characteristic}};
}

json group_summary(const FiniteGroup& g) {
  return {{"spec", g.spec()}, {"order", g.order()}, {"abelian", g.is_abelian()}};
}

json real_json(const Real& r) { return r.to_string(kRealDigits); }

BigInt parse_bigint_option(const std::string& name, const std::string& text) {
  try {
    return BigInt(text);
  } catch (const std::invalid_argument&) {
    throw InputError(name + " must be an integer");
  }
}

// ---- word ----

Prepared word_parse(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o, false);
  json params = {{"word", format_word(w)}};
  return {params, [w] {
            CommandResult out;
            std::vector<std::size_t> occ = w.occurrences();
            out.result = {{"word", format_word(w)},
                          {"length", w.length()},
                          {"distinct_vars", w.distinct_vars()},
                          {"arity", w.arity()},
                          {"occurrences", occ}};
            return out;
          }};
}

Prepared word_variations(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o);
  std::uint64_t limit = o.limit;
  json params = {{"word", format_word(w)}, {"limit", limit}};
  return {params, [w, limit] {
            CommandResult out;
            json list = json::array();
            VariationEnumerator it(w);
            std::uint64_t listed = 0;
            bool truncated = false;
            while (auto v = it.next()) {
              if (listed == limit) {
                truncated = true;
                break;
              }
              list.push_back({{"variation", format_variation(*v)}, {"flattened", format_word(v->flattened())}});
              ++listed;
            }
            out.result = {{"count", to_string(variation_count(w))},
                          {"listed", listed},
                          {"truncated", truncated},
                          {"variations", list}};
            return out;
          }};
}

Prepared word_mconst(const Options& o, const Limits&) {
  std::size_t d = o.d, l = o.l;
  json params = {{"d", d}, {"l", l}};
  return {params, [d, l] {
            CommandResult out;
            out.result = {{"M", to_string(m_constant(d, l))}};
            return out;
          }};
}

// ---- group ----

Prepared group_make(const Options& o, const Limits& limits) {
  json params = {{"group", o.group}, {"table", o.table}};
  bool table = o.table;
  std::string spec = o.group;
  return {params, [=] {
            FiniteGroup g = make_group(spec, limits);
            CommandResult out;
            out.result = group_summary(g);
            out.result["element_orders"] = g.element_orders();
            out.result["class_sizes"] = g.class_sizes();
            out.result["center_order"] = g.center().size();
            if (table) {
              json rows = json::array();
              for (Elem a = 0; a < g.order(); ++a) {
                auto r = g.row(a);
                rows.push_back(std::vector<Elem>(r.begin(), r.end()));
              }
              out.result["table"] = rows;
            }
            return out;
          }};
}

Prepared group_auts(const Options& o, const Limits& limits) {
  json params = {{"group", o.group}};
  std::string spec = o.group;
  return {params, [=] {
            FiniteGroup g = make_group(spec, limits);
            AutSet a = automorphism_group(g, limits);
            AutSet inn = inner_automorphisms(g);
            CommandResult out;
            json gens = json::array();
            for (auto i : a.generators()) gens.push_back(a[i].map());
            out.result = group_summary(g);
            out.result["aut_order"] = str(a.size());
            out.result["inn_order"] = str(inn.size());
            out.result["center_order"] = str(g.center().size());
            out.result["generators"] = gens;
            return out;
          }};
}

Prepared group_subgroups(const Options& o, const Limits& limits) {
  json params = {{"group", o.group}};
  std::string spec = o.group;
  return {params, [=] {
            FiniteGroup g = make_group(spec, limits);
            CommandResult out;
            json list = json::array();
            for (const auto& h : subgroups(g, limits)) list.push_back(subgroup_json(h));
            out.result = group_summary(g);
            out.result["count"] = list.size();
            out.result["subgroups"] = list;
            return out;
          }};
}

Prepared group_series(const Options& o, const Limits& limits) {
  json params = {{"group", o.group}};
  std::string spec = o.group;
  return {params, [=] {
            FiniteGroup g = make_group(spec, limits);
            CharSeries s = characteristic_series(g, limits);
            CommandResult out;
            json chain = json::array();
            for (const auto& h : s.chain) chain.push_back({{"order", h.order()}, {"elements", h.elements}});
            json factors = json::array();
            for (std::size_t i = 0; i < s.factors.size(); ++i) {
              const auto& dec = s.decompositions[i];
              factors.push_back({{"order", s.factors[i].order()},
                                 {"simple", dec.name},
                                 {"simple_order", dec.simple.order()},
                                 {"power", dec.power}});
            }
            out.result = group_summary(g);
            out.result["chain"] = chain;
            out.result["factors"] = factors;
            return out;
          }};
}

Prepared group_radical(const Options& o, const Limits& limits) {
  json params = {{"group", o.group}};
  std::string spec = o.group;
  return {params, [=] {
            FiniteGroup g = make_group(spec, limits);
            SubgroupHandle r = solvable_radical(g, limits);
            CommandResult out;
            out.result = group_summary(g);
            out.result["radical"] = {{"order", r.order()}, {"elements", r.elements}};
            return out;
          }};
}

// ---- fiber ----

Prepared fiber_dist(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  json params = {{"group", o.group}, {"word", format_word(w)}, {"auts", o.auts}, {"tuple", o.tuple}};
  Options copy = o;
  return {params, [=] {
            FiniteGroup g = group_arg(copy, limits);
            AutTuple tuple;
            std::vector<std::size_t> idx;
            if (copy.tuple.empty()) {
              tuple = identity_tuple(g, w.length());
            } else {
              AutSet a = resolve_autset(g, copy.auts, w.length(), limits);
              idx = parse_index_list(copy.tuple);
              if (idx.size() != w.length()) throw InputError("--tuple needs one index per letter");
              for (auto i : idx)
                if (i >= a.size()) throw InputError("tuple index out of range for the automorphism set");
              tuple = tuple_from_indices(a, idx);
            }
            FiberDistribution dist = fiber_distribution(g, w, tuple, limits);
            CommandResult out;
            std::vector<std::string> counts;
            for (auto c : dist.counts) counts.push_back(str(c));
            out.result = {{"counts", counts},
                          {"max", str(dist.max_count())},
                          {"argmax", dist.argmax()},
                          {"arity", dist.arity},
                          {"group_order", dist.group_order}};
            std::uint64_t total = 0;
            for (auto c : dist.counts) total += c;
            out.stats = {{"evaluations", total}};
            return out;
          }};
}

Prepared fiber_pi(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  json params = {{"group", o.group}, {"word", format_word(w)}};
  Options copy = o;
  return {params, [=] {
            FiniteGroup g = group_arg(copy, limits);
            PiResult p = pi_w(g, w, limits);
            CommandResult out;
            out.result = {{"Pi", to_string(p.value)}, {"pi", to_string(p.proportion)}, {"target", p.witness_target}};
            return out;
          }};
}

Prepared fiber_max(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  SearchMode mode = parse_mode(o.mode);
  json params = {{"group", o.group}, {"word", format_word(w)}, {"auts", o.auts}, {"target", o.target},
                 {"mode", o.mode}};
  if (mode == SearchMode::sample) {
    params["samples"] = o.samples;
    params["seed"] = o.seed;
  }
  Options copy = o;
  return {params, [=] {
            FiniteGroup g = group_arg(copy, limits);
            AutSet a = resolve_autset(g, copy.auts, w.length(), limits);
            MaxFiberOptions opts;
            opts.mode = mode;
            opts.samples = copy.samples;
            opts.seed = copy.seed;
            if (copy.target != "any") {
              auto t = parse_index_list(copy.target);
              if (t.size() != 1) throw InputError("--target must be 'any' or one element index");
              opts.target = static_cast<Elem>(t[0]);
            }
            MaxFiberResult r = max_fiber(g, w, a, opts, limits);
            CommandResult out;
            out.result = {{"value", to_string(r.value)},
                          {"proportion", to_string(r.proportion)},
                          {"witness_tuple", r.witness_indices},
                          {"witness_target", r.witness_target},
                          {"status", r.status == ResultStatus::exact ? "exact" : "lower_bound"},
                          {"aut_set", to_string(a.kind())},
                          {"aut_set_size", a.size()}};
            if (r.seed) out.result["seed"] = str(*r.seed);
            out.stats = {{"tuples", r.tuples_examined}, {"evaluations", r.evaluations}};
            return out;
          }};
}

// ---- verify ----

Prepared verify_identity(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  json params = {{"group", o.group}, {"word", format_word(w)}, {"auts", o.auts}};
  Options copy = o;
  return {params, [=] {
            FiniteGroup g = group_arg(copy, limits);
            AutSet a = resolve_autset(g, copy.auts, w.length(), limits);
            return report_outcome(check_identity_maximal(g, w, a, limits));
          }};
}

Prepared verify_submult(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  if (o.subgroup.empty()) throw InputError("--subgroup is required");
  json params = {{"group", o.group}, {"subgroup", o.subgroup}, {"word", format_word(w)}, {"auts", o.auts}};
  Options copy = o;
  return {params, [=] {
            FiniteGroup g = group_arg(copy, limits);
            SubgroupHandle n = select_subgroup(g, copy.subgroup, limits);
            AutSet a = resolve_autset(g, copy.auts, w.length(), limits);
            return report_outcome(check_submultiplicative(g, n, w, a, limits));
          }};
}

Prepared verify_dihedral(const Options& o, const Limits& limits) {
  std::size_t ord = o.o;
  json params = {{"o", ord}};
  return {params, [=] { return report_outcome(check_dihedral_counterexample(ord, limits)); }};
}

Prepared verify_rewrite(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  if (o.subgroup.empty()) throw InputError("--subgroup is required");
  json params = {{"group", o.group}, {"subgroup", o.subgroup}, {"word", format_word(w)}, {"trials", o.trials},
                 {"seed", o.seed}};
  Options copy = o;
  return {params, [=] {
            FiniteGroup g = group_arg(copy, limits);
            SubgroupHandle n = select_subgroup(g, copy.subgroup, limits);
            return report_outcome(check_rewrite(g, n, w, copy.trials, copy.seed, limits));
          }};
}

Prepared verify_variation_bound(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  VariationBoundOptions vb;
  vb.mode = parse_mode(o.mode);
  vb.samples = o.samples;
  vb.seed = o.seed;
  vb.use_floor = o.floor;
  vb.epsilon_scale = parse_rational(o.epsilon_scale);
  json params = {{"group", o.group},     {"n", o.n},         {"word", format_word(w)},
                 {"mode", o.mode},       {"samples", o.samples}, {"seed", o.seed},
                 {"floor", o.floor},     {"epsilon_scale", to_string(vb.epsilon_scale)}};
  Options copy = o;
  return {params, [=] {
            FiniteGroup s = group_arg(copy, limits);
            return report_outcome(check_variation_bound(s, copy.n, w, vb, limits));
          }};
}

Prepared verify_variation_projection(const Options& o, const Limits& limits) {
  ReducedWord w = word_arg(o);
  json params = {{"group", o.group}, {"word", format_word(w)}};
  Options copy = o;
  return {params, [=] {
            FiniteGroup g = group_arg(copy, limits);
            return report_outcome(check_variation_projection(g, w, limits));
          }};
}

Prepared verify_battery(const Options& o, const Limits& limits) {
  std::string manifest = o.manifest.empty() ? std::string(WFL_DATA_DIR) + "/battery.json" : o.manifest;
  json params = {{"manifest", manifest}, {"out", o.out_dir}};
  std::string out_dir = o.out_dir;
  Prepared p{params, [=] {
               auto entries = load_manifest(manifest);
               CommandResult out;
               out.result = run_battery(entries, out_dir, limits, out.exit_code);
               out.status = out.exit_code == kExitOk ? "pass" : out.exit_code == kExitCheckFailed ? "fail" : "error";
               return out;
             }};
  p.cacheable = false;
  return p;
}

// ---- bounds ----

Prepared bounds_exclude(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o);
  BigRational rho = rho_arg(o);
  json params = {{"word", format_word(w)}, {"rho", to_string(rho)}};
  return {params, [=] {
            ExclusionReport r = excluded_factors_report(w, rho);
            CommandResult out;
            out.result = {
                {"length", r.length},
                {"arity", r.arity},
                {"rho", to_string(r.rho)},
                {"M", to_string(r.m)},
                {"M_prime", to_string(r.m_prime)},
                {"alt",
                 {{"ln_factorial_argument", real_json(r.alt.ln_factorial_argument)},
                  {"factorial_argument", log_number_json(r.alt.factorial_argument)},
                  {"term_factorial", log_number_json(r.alt.term_factorial)},
                  {"term_rho", log_number_json(r.alt.term_rho)},
                  {"threshold", log_number_json(r.alt.threshold)}}},
                {"lie",
                 {{"term_const", to_string(r.lie.term_const)},
                  {"term_rho", real_json(r.lie.term_rho)},
                  {"threshold", real_json(r.lie.threshold)}}},
                {"simple_alt",
                 {{"M", to_string(r.alt_simple.m)},
                  {"n_threshold", log_number_json(r.alt_simple.n_threshold)},
                  {"exponent", to_string(r.alt_simple.exponent)}}},
                {"simple_lie",
                 {{"rank_threshold", to_string(r.lie_simple.rank_threshold)},
                  {"exponent", to_string(r.lie_simple.exponent)}}},
                {"sporadic_excluded", false},
                {"narrative", r.narrative}};
            return out;
          }};
}

Prepared bounds_alt(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o);
  BigRational rho = rho_arg(o);
  json params = {{"word", format_word(w)}, {"rho", to_string(rho)}};
  return {params, [=] {
            AltExclusionThreshold a = alt_exclusion_threshold(w, rho);
            CommandResult out;
            out.result = {{"M_prime", to_string(a.m_prime)},
                          {"ln_factorial_argument", real_json(a.ln_factorial_argument)},
                          {"factorial_argument", log_number_json(a.factorial_argument)},
                          {"term_factorial", log_number_json(a.term_factorial)},
                          {"term_rho", log_number_json(a.term_rho)},
                          {"threshold", log_number_json(a.threshold)}};
            return out;
          }};
}

Prepared bounds_lie(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o);
  BigRational rho = rho_arg(o);
  json params = {{"word", format_word(w)}, {"rho", to_string(rho)}};
  return {params, [=] {
            LieRankThreshold t = lie_rank_threshold(w, rho);
            CommandResult out;
            out.result = {{"term_const", to_string(t.term_const)},
                          {"term_rho", real_json(t.term_rho)},
                          {"threshold", real_json(t.threshold)}};
            return out;
          }};
}

Prepared bounds_simple(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o);
  json params = {{"word", format_word(w)}};
  return {params, [=] {
            AltSimpleBound a = simple_group_bound_alt(w);
            LieSimpleBound l = simple_group_bound_lie(w);
            CommandResult out;
            out.result = {{"alt",
                           {{"M", to_string(a.m)},
                            {"n_threshold", log_number_json(a.n_threshold)},
                            {"exponent", to_string(a.exponent)}}},
                          {"lie", {{"rank_threshold", to_string(l.rank_threshold)}, {"exponent", to_string(l.exponent)}}}};
            if (a.n_min) out.result["alt"]["n_min"] = to_string(*a.n_min);
            return out;
          }};
}

Prepared bounds_n0(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o);
  BigRational rho = rho_arg(o);
  BigInt s = parse_bigint_option("--s-order", o.s_order);
  json params = {{"word", format_word(w)}, {"rho", to_string(rho)}, {"s_order", to_string(s)}};
  return {params, [=] {
            CommandResult out;
            out.result = {{"n0", to_string(n0_bound(w, rho, s))},
                          {"epsilon_upper_bound", to_string(epsilon_upper_bound(s, w.length()))}};
            return out;
          }};
}

Prepared bounds_radical(const Options& o, const Limits&) {
  ReducedWord w = word_arg(o);
  BigRational rho = rho_arg(o);
  BigRational eta0 = parse_rational(o.eta0);
  BigInt cap = parse_bigint_option("--n0-cap", o.n0_cap);
  std::vector<SimpleFactorCandidate> factors;
  if (!o.factors.empty()) {
    std::stringstream ss(o.factors);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto colon = part.find(':');
      if (colon == std::string::npos) throw InputError("factors are written as order:aut_order, comma separated");
      try {
        factors.push_back({BigInt(part.substr(0, colon)), BigInt(part.substr(colon + 1))});
      } catch (const std::invalid_argument&) {
        throw InputError("malformed factor '" + part + "'");
      }
    }
  }
  json flist = json::array();
  for (const auto& f : factors) flist.push_back({to_string(f.order), to_string(f.aut_order)});
  json params = {{"word", format_word(w)}, {"rho", to_string(rho)}, {"factors", flist},
                 {"n0_cap", to_string(cap)}, {"eta0", to_string(eta0)}};
  return {params, [=] {
            RadicalIndexBound b = radical_index_bound(factors, w, rho, cap, eta0);
            CommandResult out;
            std::vector<std::string> n0;
            for (const auto& v : b.n0) n0.push_back(to_string(v));
            out.result = {{"bound", log_number_json(b.bound)}, {"n0", n0}};
            return out;
          }};
}

using Builder = Prepared (*)(const Options&, const Limits&);

}  // namespace

nlohmann::json log_number_json(const LogNumber& v) {
  json j = json::object();
  if (v.exact) j["exact"] = to_string(*v.exact);
  j["ln"] = v.ln ? json(v.ln->to_string(kRealDigits)) : json(nullptr);
  if (v.ln_ln) j["ln_ln"] = v.ln_ln->to_string(kRealDigits);
  if (v.factorial_of) {
    if (v.factorial_of->exact)
      j["is_factorial_of"] = to_string(*v.factorial_of->exact);
    else
      j["factorial_argument"] = log_number_json(*v.factorial_of);
  }
  return j;
}

SubgroupHandle select_subgroup(const FiniteGroup& g, const std::string& selector, const Limits& limits) {
  if (selector == "trivial") return trivial_subgroup(g, limits);
  if (selector == "whole") return whole_group(g, limits);
  if (selector == "center") return make_subgroup(g, g.center(), limits);
  if (selector == "derived") {
    std::vector<Elem> all(g.order());
    for (Elem x = 0; x < g.order(); ++x) all[x] = x;
    return make_subgroup(g, derived_subgroup(g, all), limits);
  }
  if (selector == "radical") return solvable_radical(g, limits);
  if (selector.rfind("char:", 0) == 0) {
    std::size_t order = parse_index_list(selector.substr(5)).at(0);
    std::vector<SubgroupHandle> hits;
    for (auto& h : subgroups(g, limits))
      if (h.order() == order && h.characteristic) hits.push_back(h);
    if (hits.size() != 1)
      throw InputError("selector " + selector + " matches " + std::to_string(hits.size()) +
                       " characteristic subgroups; exactly one is required");
    return hits.front();
  }
  if (selector.rfind("gen:", 0) == 0) {
    auto idx = parse_index_list(selector.substr(4));
    std::vector<Elem> gens;
    for (auto i : idx) {
      if (i >= g.order()) throw InputError("generator index out of range");
      gens.push_back(static_cast<Elem>(i));
    }
    return make_subgroup(g, generated_subgroup(g, gens), limits);
  }
  throw InputError("unknown subgroup selector '" + selector + "'");
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word maps, fibers and bounds for finite groups", "wfl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::optional<unsigned> threads;
  std::optional<std::uint64_t> budget;
  std::string cache_dir;
  bool no_cache = false;
  app.add_option("--threads", threads, "worker threads (env WFL_THREADS)")->check(CLI::PositiveNumber);
  app.add_option("--budget", budget, "evaluation budget (env WFL_BUDGET)")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cache_dir, "result cache directory (env WFL_CACHE_DIR)");
  app.add_flag("--no-cache", no_cache, "disable the result cache");

  Options o;
  std::vector<std::pair<CLI::App*, Builder>> leaves;
  std::vector<std::string> names;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Builder b) {
    CLI::App* c = parent->add_subcommand(name, help);
    leaves.emplace_back(c, b);
    names.push_back(parent->get_name() + " " + name);
    return c;
  };
  auto with_word = [&](CLI::App* c) { c->add_option("--word,-w", o.word, "word, e.g. \"[x1,x2]\" or \"x1^2 x2\""); };
  auto with_group = [&](CLI::App* c) { c->add_option("--group,-g", o.group, "group spec, e.g. sym:3"); };
  auto with_auts = [&](CLI::App* c) { c->add_option("--auts", o.auts, "aut | inn | id | auto")->capture_default_str(); };
  auto with_rho = [&](CLI::App* c) { c->add_option("--rho", o.rho, "rho in (0,1], as p/q or decimal")->capture_default_str(); };
  auto with_sampling = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "exact | sample")->capture_default_str();
    c->add_option("--samples", o.samples, "sampled tuples")->capture_default_str();
    c->add_option("--seed", o.seed, "random seed")->capture_default_str();
  };

  CLI::App* word = app.add_subcommand("word", "reduced words");
  word->require_subcommand(1);
  with_word(leaf(word, "parse", "parse and normalize a word", word_parse));
  {
    auto* c = leaf(word, "variations", "enumerate variations", word_variations);
    with_word(c);
    c->add_option("--limit", o.limit, "list at most this many")->capture_default_str();
  }
  {
    auto* c = leaf(word, "mconst", "the constant M(d,l)", word_mconst);
    c->add_option("-d", o.d, "number of variables")->required();
    c->add_option("-l", o.l, "word length")->required();
  }

  CLI::App* group = app.add_subcommand("group", "finite groups");
  group->require_subcommand(1);
  {
    auto* c = leaf(group, "make", "construct and summarize a group", group_make);
    with_group(c);
    c->add_flag("--table", o.table, "include the Cayley table");
  }
  with_group(leaf(group, "auts", "automorphism group", group_auts));
  with_group(leaf(group, "subgroups", "all subgroups with flags", group_subgroups));
  with_group(leaf(group, "series", "characteristic series and factors", group_series));
  with_group(leaf(group, "radical", "solvable radical", group_radical));

  CLI::App* fiber = app.add_subcommand("fiber", "fibers of word maps");
  fiber->require_subcommand(1);
  {
    auto* c = leaf(fiber, "dist", "fiber sizes of one automorphic word map", fiber_dist);
    with_group(c);
    with_word(c);
    with_auts(c);
    c->add_option("--tuple", o.tuple, "automorphism indices per letter, e.g. 0,3");
  }
  {
    auto* c = leaf(fiber, "pi", "largest fiber of the word map", fiber_pi);
    with_group(c);
    with_word(c);
  }
  {
    auto* c = leaf(fiber, "max", "largest fiber over automorphic word maps", fiber_max);
    with_group(c);
    with_word(c);
    with_auts(c);
    with_sampling(c);
    c->add_option("--target", o.target, "element index or 'any'")->capture_default_str();
  }

  CLI::App* verify = app.add_subcommand("verify", "checks");
  verify->require_subcommand(1);
  {
    auto* c = leaf(verify, "identity-max", "identity has the largest fiber", verify_identity);
    with_group(c);
    with_word(c);
    with_auts(c);
  }
  {
    auto* c = leaf(verify, "submult", "fiber bound through G/N and N", verify_submult);
    with_group(c);
    with_word(c);
    with_auts(c);
    c->add_option("--subgroup", o.subgroup, "trivial|whole|center|derived|radical|char:<order>|gen:<i,j>");
  }
  leaf(verify, "dihedral", "dihedral counterexample for x1^2", verify_dihedral)
      ->add_option("--o", o.o, "odd integer >= 3")
      ->capture_default_str();
  {
    auto* c = leaf(verify, "rewrite", "coset equation rewriting", verify_rewrite);
    with_group(c);
    with_word(c);
    c->add_option("--subgroup", o.subgroup, "subgroup selector");
    c->add_option("--trials", o.trials, "random trials")->capture_default_str();
    c->add_option("--seed", o.seed, "random seed")->capture_default_str();
  }
  {
    auto* c = leaf(verify, "variation-bound", "p_w(S^n) against the variation bound", verify_variation_bound);
    with_group(c);
    with_word(c);
    with_sampling(c);
    c->add_option("--n", o.n, "power of S")->capture_default_str();
    c->add_flag("--floor", o.floor, "use floor(n/l^2) in the exponent");
    c->add_option("--epsilon-scale", o.epsilon_scale, "scale epsilon (negative controls)")->capture_default_str();
  }
  {
    auto* c = leaf(verify, "variation-projection", "constant variation maps project to w", verify_variation_projection);
    with_group(c);
    with_word(c);
  }
  {
    auto* c = leaf(verify, "battery", "run a manifest of checks", verify_battery);
    c->add_option("--manifest", o.manifest, "manifest path (default: shipped battery)");
    c->add_option("--out", o.out_dir, "directory for per-check reports")->capture_default_str();
  }

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form bounds");
  bounds->require_subcommand(1);
  {
    auto* c = leaf(bounds, "exclude", "excluded simple factors", bounds_exclude);
    with_word(c);
    with_rho(c);
  }
  {
    auto* c = leaf(bounds, "alt", "alternating group threshold", bounds_alt);
    with_word(c);
    with_rho(c);
  }
  {
    auto* c = leaf(bounds, "lie", "Lie rank threshold", bounds_lie);
    with_word(c);
    with_rho(c);
  }
  with_word(leaf(bounds, "simple", "bounds for a single simple group", bounds_simple));
  {
    auto* c = leaf(bounds, "n0", "n0(w, rho) for a simple order", bounds_n0);
    with_word(c);
    with_rho(c);
    c->add_option("--s-order", o.s_order, "order of S")->capture_default_str();
  }
  {
    auto* c = leaf(bounds, "radical-bound", "bound on |G : Rad(G)|", bounds_radical);
    with_word(c);
    with_rho(c);
    c->add_option("--factors", o.factors, "candidates as order:aut_order, comma separated");
    c->add_option("--n0-cap", o.n0_cap, "N0")->capture_default_str();
    c->add_option("--eta0", o.eta0, "eta0 > 0")->capture_default_str();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::size_t which = leaves.size();
  for (std::size_t i = 0; i < leaves.size(); ++i)
    if (leaves[i].first->parsed()) which = i;
  if (which == leaves.size()) {
    err << "usage error: a subcommand is required\n";
    return kExitUsage;
  }

  Limits limits = default_limits();
  if (threads) limits.threads = *threads;
  if (budget) limits.budget = *budget;
  if (cache_dir.empty())
    if (const char* env = std::getenv("WFL_CACHE_DIR")) cache_dir = env;

  json request = {{"command", names[which]}};
  json doc = {{"schema_version", kSchemaVersion}};
  auto fail = [&](const std::string& kind, const std::string& message, int code) {
    doc["request"] = request;
    doc["result"] = {{"error", message}, {"kind", kind}};
    doc["status"] = "error";
    doc["stats"] = json::object();
    out << doc.dump(2) << "\n";
    err << kind << " error: " << message << "\n";
    return code;
  };

  try {
    Prepared p = leaves[which].second(o, limits);
    request["params"] = p.params;
    doc["request"] = request;

    std::optional<ResultCache> cache;
    std::string digest;
    if (p.cacheable && !no_cache && !cache_dir.empty()) {
      cache.emplace(cache_dir);
      digest = ResultCache::digest(request);
      if (auto hit = cache->lookup(digest, err)) {
        err << "cache hit " << digest << "\n";
        doc["result"] = (*hit)["result"];
        doc["status"] = (*hit)["status"];
        doc["stats"] = (*hit)["stats"];
        out << doc.dump(2) << "\n";
        return (*hit)["exit_code"].get<int>();
      }
    }
    CommandResult r = p.compute();
    doc["result"] = r.result;
    doc["status"] = r.status;
    doc["stats"] = r.stats;
    if (cache)
      cache->store(digest, {{"request", request},
                            {"result", r.result},
                            {"status", r.status},
                            {"stats", r.stats},
                            {"exit_code", r.exit_code}});
    out << doc.dump(2) << "\n";
    return r.exit_code;
  } catch (const CapExceeded& e) {
    return fail("cap", e.what(), kExitCap);
  } catch (const InputError& e) {
    return fail("input", e.what(), kExitUsage);
  } catch (const std::invalid_argument& e) {
    return fail("input", e.what(), kExitUsage);
  } catch (const nlohmann::json::exception& e) {
    return fail("input", e.what(), kExitUsage);
  } catch (const std::filesystem::filesystem_error& e) {
    return fail("input", e.what(), kExitUsage);
  }
}

}  // namespace wfl
