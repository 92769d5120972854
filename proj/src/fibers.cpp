#include "wfl/fibers.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace wfl {

AutTuple identity_tuple(const FiniteGroup& g, std::size_t length) {
  return AutTuple(length, Automorphism::identity(g.order()));
}

namespace {

void check_args(const ReducedWord& w, std::span<const Elem> args) {
  if (args.size() != w.variable_slots())
    throw InputError("word needs " + std::to_string(w.variable_slots()) + " arguments, got " +
                     std::to_string(args.size()));
}

void require_nonempty(const ReducedWord& w) {
  if (w.empty()) throw InputError("fiber computations need a word of length >= 1");
}

BigInt int_pow(std::size_t base, std::size_t exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

// Counts all fibers of one automorphic word map over G^d.
class FiberCounter {
 public:
  FiberCounter(const FiniteGroup& g, const ReducedWord& w)
      : g_(g), w_(w), d_(w.variable_slots()), images_(w.length() * g.order()), args_(d_) {}

  // images_[i*n + x] = alpha_i(x)^{e_i}
  void load(const std::vector<const Automorphism*>& auts) {
    const std::size_t n = g_.order();
    for (std::size_t i = 0; i < w_.length(); ++i) {
      Elem* row = images_.data() + i * n;
      const auto& a = *auts[i];
      if (w_[i].sign > 0)
        for (Elem x = 0; x < n; ++x) row[x] = a(x);
      else
        for (Elem x = 0; x < n; ++x) row[x] = g_.inv(a(x));
    }
  }

  Elem eval() const {
    const std::size_t n = g_.order();
    Elem acc = images_[args_[w_.slot(0)]];
    for (std::size_t i = 1; i < w_.length(); ++i) acc = g_.mul(acc, images_[i * n + args_[w_.slot(i)]]);
    return acc;
  }

  // Calls f(value) for every argument tuple; stops early when f returns false.
  template <class F>
  void for_each_value(F&& f) {
    const std::size_t n = g_.order();
    std::fill(args_.begin(), args_.end(), 0);
    for (;;) {
      if (!f(eval())) return;
      std::size_t k = d_;
      for (;;) {
        if (k == 0) return;
        --k;
        if (++args_[k] < n) break;
        args_[k] = 0;
      }
    }
  }

  void count(std::vector<std::uint64_t>& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    for_each_value([&](Elem v) {
      ++counts[v];
      return true;
    });
  }

 private:
  const FiniteGroup& g_;
  const ReducedWord& w_;
  std::size_t d_;
  std::vector<Elem> images_;
  std::vector<Elem> args_;
};

template <class Work>
void run_parallel(std::uint64_t total, unsigned threads, Work&& work) {
  threads = std::max(1u, threads);
  if (threads == 1 || total < 2) {
    work(0, std::uint64_t{0}, total);
    return;
  }
  std::uint64_t chunk = std::max<std::uint64_t>(1, total / (static_cast<std::uint64_t>(threads) * 16));
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (;;) {
          std::uint64_t begin = next.fetch_add(chunk);
          if (begin >= total) break;
          work(t, begin, std::min(total, begin + chunk));
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

Elem eval_word(const FiniteGroup& g, const ReducedWord& w, std::span<const Elem> args) {
  check_args(w, args);
  Elem acc = 0;
  for (const auto& letter : w.letters()) {
    Elem x = args[static_cast<std::size_t>(letter.var - 1)];
    acc = g.mul(acc, letter.sign > 0 ? x : g.inv(x));
  }
  return acc;
}

Elem eval_automorphic(const FiniteGroup& g, const ReducedWord& w, const AutTuple& auts, std::span<const Elem> args) {
  check_args(w, args);
  if (auts.size() != w.length())
    throw InputError("automorphism tuple has length " + std::to_string(auts.size()) + ", word has length " +
                     std::to_string(w.length()));
  Elem acc = 0;
  for (std::size_t i = 0; i < w.length(); ++i) {
    Elem x = auts[i](args[w.slot(i)]);
    acc = g.mul(acc, w[i].sign > 0 ? x : g.inv(x));
  }
  return acc;
}

std::uint64_t FiberDistribution::max_count() const { return *std::max_element(counts.begin(), counts.end()); }

Elem FiberDistribution::argmax() const {
  return static_cast<Elem>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

FiberDistribution fiber_distribution(const FiniteGroup& g, const ReducedWord& w, const AutTuple& auts,
                                     const Limits& limits) {
  require_nonempty(w);
  if (auts.size() != w.length()) throw InputError("automorphism tuple length must equal the word length");
  for (const auto& a : auts)
    if (a.size() != g.order()) throw InputError("automorphism does not act on the group");
  if (int_pow(g.order(), w.variable_slots()) > BigInt(static_cast<unsigned long>(limits.budget)))
    throw CapExceeded("|G|^d exceeds the evaluation budget");
  FiberDistribution dist;
  dist.group_order = g.order();
  dist.arity = w.variable_slots();
  dist.counts.assign(g.order(), 0);
  FiberCounter counter(g, w);
  std::vector<const Automorphism*> ptrs;
  for (const auto& a : auts) ptrs.push_back(&a);
  counter.load(ptrs);
  counter.count(dist.counts);
  return dist;
}

PiResult pi_w(const FiniteGroup& g, const ReducedWord& w, const Limits& limits) {
  auto dist = fiber_distribution(g, w, identity_tuple(g, w.length()), limits);
  PiResult r;
  r.value = BigInt(static_cast<unsigned long>(dist.max_count()));
  r.proportion = BigRational(r.value, int_pow(g.order(), w.variable_slots()));
  r.proportion.canonicalize();
  r.witness_target = dist.argmax();
  return r;
}

std::vector<std::size_t> decode_tuple(std::uint64_t index, std::size_t set_size, std::size_t length) {
  std::vector<std::size_t> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<std::size_t>(index % set_size);
    index /= set_size;
  }
  return out;
}

AutTuple tuple_from_indices(const AutSet& a, const std::vector<std::size_t>& indices) {
  AutTuple t;
  for (auto i : indices) t.push_back(a[i]);
  return t;
}

namespace {

std::uint64_t exact_tuple_count(const FiniteGroup& g, const ReducedWord& w, const AutSet& a, const Limits& limits) {
  if (a.size() == 0) throw InputError("automorphism set is empty");
  if (a.group_order() != g.order()) throw InputError("automorphism set does not act on the group");
  BigInt tuples = int_pow(a.size(), w.length());
  BigInt work = tuples * int_pow(g.order(), w.variable_slots());
  if (work > BigInt(static_cast<unsigned long>(limits.budget)))
    throw CapExceeded("exact search needs " + work.get_str() + " evaluations, above the budget " +
                      std::to_string(limits.budget));
  return tuples.get_ui();
}

}  // namespace

TargetMaxima max_fiber_per_target(const FiniteGroup& g, const ReducedWord& w, const AutSet& a, const Limits& limits) {
  require_nonempty(w);
  const std::uint64_t total = exact_tuple_count(g, w, a, limits);
  const std::size_t n = g.order();
  constexpr std::uint64_t none = ~std::uint64_t{0};
  unsigned threads = std::max(1u, limits.threads);

  struct Local {
    std::vector<std::uint64_t> best, tuple;
  };
  std::vector<Local> locals(threads, Local{std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, none)});

  run_parallel(total, threads, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
    auto& local = locals[worker];
    FiberCounter counter(g, w);
    std::vector<std::uint64_t> counts(n);
    std::vector<const Automorphism*> ptrs(w.length());
    for (std::uint64_t t = begin; t < end; ++t) {
      auto idx = decode_tuple(t, a.size(), w.length());
      for (std::size_t i = 0; i < idx.size(); ++i) ptrs[i] = &a[idx[i]];
      counter.load(ptrs);
      counter.count(counts);
      for (std::size_t x = 0; x < n; ++x) {
        if (counts[x] > local.best[x] || (counts[x] == local.best[x] && t < local.tuple[x])) {
          local.best[x] = counts[x];
          local.tuple[x] = t;
        }
      }
    }
  });

  TargetMaxima out;
  out.best.assign(n, 0);
  out.best_tuple.assign(n, none);
  for (const auto& local : locals)
    for (std::size_t x = 0; x < n; ++x)
      if (local.best[x] > out.best[x] || (local.best[x] == out.best[x] && local.tuple[x] < out.best_tuple[x])) {
        out.best[x] = local.best[x];
        out.best_tuple[x] = local.tuple[x];
      }
  out.tuples = total;
  BigInt evals = BigInt(static_cast<unsigned long>(total)) * int_pow(n, w.variable_slots());
  out.evaluations = evals.get_ui();
  return out;
}

MaxFiberResult max_fiber(const FiniteGroup& g, const ReducedWord& w, const AutSet& a, const MaxFiberOptions& options,
                         const Limits& limits) {
  require_nonempty(w);
  if (a.size() == 0) throw InputError("automorphism set is empty");
  if (options.target && *options.target >= g.order()) throw InputError("target element out of range");
  const std::size_t n = g.order();
  const BigInt space = int_pow(n, w.variable_slots());
  MaxFiberResult r;

  auto finish = [&](std::uint64_t value, const std::vector<std::size_t>& idx, Elem target) {
    r.value = BigInt(static_cast<unsigned long>(value));
    r.proportion = BigRational(r.value, space);
    r.proportion.canonicalize();
    r.witness_indices = idx;
    r.witness_tuple = tuple_from_indices(a, idx);
    r.witness_target = target;
  };

  if (options.mode == SearchMode::exact) {
    auto maxima = max_fiber_per_target(g, w, a, limits);
    Elem target = 0;
    if (options.target) {
      target = *options.target;
    } else {
      for (Elem x = 1; x < n; ++x) {
        if (maxima.best[x] > maxima.best[target] ||
            (maxima.best[x] == maxima.best[target] && maxima.best_tuple[x] < maxima.best_tuple[target]))
          target = x;
      }
    }
    finish(maxima.best[target], decode_tuple(maxima.best_tuple[target], a.size(), w.length()), target);
    r.status = ResultStatus::exact;
    r.tuples_examined = maxima.tuples;
    r.evaluations = maxima.evaluations;
    return r;
  }

  // Sampled: the identity tuple first, then seeded uniform draws.
  if (options.samples == 0) throw InputError("sample mode needs at least one sample");
  BigInt work = BigInt(static_cast<unsigned long>(options.samples)) * space;
  if (work > BigInt(static_cast<unsigned long>(limits.budget)))
    throw CapExceeded("sampled search needs " + work.get_str() + " evaluations, above the budget");
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
  std::vector<std::vector<std::size_t>> draws(options.samples, std::vector<std::size_t>(w.length(), 0));
  for (std::uint64_t s = 1; s < options.samples; ++s)
    for (auto& i : draws[s]) i = pick(rng);

  struct Best {
    std::uint64_t value = 0;
    std::vector<std::size_t> idx;
    Elem target = 0;
    bool set = false;
  };
  auto better = [](std::uint64_t v, const std::vector<std::size_t>& idx, Elem t, const Best& b) {
    if (!b.set || v > b.value) return true;
    if (v < b.value) return false;
    if (idx != b.idx) return idx < b.idx;
    return t < b.target;
  };
  unsigned threads = std::max(1u, limits.threads);
  std::vector<Best> locals(threads);
  run_parallel(options.samples, threads, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
    FiberCounter counter(g, w);
    std::vector<std::uint64_t> counts(n);
    std::vector<const Automorphism*> ptrs(w.length());
    for (std::uint64_t s = begin; s < end; ++s) {
      for (std::size_t i = 0; i < w.length(); ++i) ptrs[i] = &a[draws[s][i]];
      counter.load(ptrs);
      counter.count(counts);
      if (options.target) {
        Elem t = *options.target;
        if (better(counts[t], draws[s], t, locals[worker])) locals[worker] = {counts[t], draws[s], t, true};
      } else {
        for (Elem x = 0; x < n; ++x)
          if (better(counts[x], draws[s], x, locals[worker])) locals[worker] = {counts[x], draws[s], x, true};
      }
    }
  });
  Best best;
  for (const auto& l : locals)
    if (l.set && better(l.value, l.idx, l.target, best)) best = l;
  finish(best.value, best.idx, best.target);
  r.status = ResultStatus::lower_bound;
  r.tuples_examined = options.samples;
  r.evaluations = work.get_ui();
  r.seed = options.seed;
  return r;
}

std::optional<std::vector<std::size_t>> find_constant_tuple(const FiniteGroup& g, const ReducedWord& w,
                                                            const AutSet& a, const Limits& limits) {
  require_nonempty(w);
  const std::uint64_t total = exact_tuple_count(g, w, a, limits);
  FiberCounter counter(g, w);
  std::vector<const Automorphism*> ptrs(w.length());
  for (std::uint64_t t = 0; t < total; ++t) {
    auto idx = decode_tuple(t, a.size(), w.length());
    for (std::size_t i = 0; i < idx.size(); ++i) ptrs[i] = &a[idx[i]];
    counter.load(ptrs);
    bool first = true, constant = true;
    Elem value = 0;
    counter.for_each_value([&](Elem v) {
      if (first) {
        value = v;
        first = false;
        return true;
      }
      constant = v == value;
      return constant;
    });
    if (constant) return idx;
  }
  return std::nullopt;
}

AutTuple rewrite_coset_equation(const FiniteGroup& g, const SubgroupHandle& n, const ReducedWord& w,
                                const AutTuple& auts, std::span<const Elem> base, Elem target) {
  if (eval_automorphic(g, w, auts, base) != target)
    throw InputError("base tuple does not satisfy the equation w(base) = target");
  std::vector<Elem> index(g.order(), static_cast<Elem>(-1));
  for (std::size_t i = 0; i < n.elements.size(); ++i) index[n.elements[i]] = static_cast<Elem>(i);

  AutTuple beta;
  Elem prefix = 0;  // product of the factors before position i
  for (std::size_t i = 0; i < w.length(); ++i) {
    Elem image = auts[i](base[w.slot(i)]);
    Elem factor = w[i].sign > 0 ? image : g.inv(image);
    Elem c = w[i].sign > 0 ? prefix : g.mul(prefix, factor);
    std::vector<Elem> map(n.order());
    for (std::size_t k = 0; k < n.order(); ++k) {
      Elem y = g.conj(c, auts[i](n.elements[k]));
      if (index[y] == static_cast<Elem>(-1))
        throw std::logic_error("conj(c_i) o alpha_i does not stabilize N; N is not characteristic");
      map[k] = index[y];
    }
    beta.emplace_back(std::move(map));
    prefix = g.mul(prefix, factor);
  }
  return beta;
}

}  // namespace wfl
