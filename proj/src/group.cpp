#include "wfl/group.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace wfl {

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Elem> table, std::string spec)
    : order_(order), table_(std::move(table)), spec_(std::move(spec)) {
  if (order_ == 0) throw InputError("group order must be positive");
  if (table_.size() != order_ * order_) throw InputError("multiplication table has wrong size");
  for (Elem x : table_)
    if (x >= order_) throw InputError("multiplication table entry out of range");
  for (Elem g = 0; g < order_; ++g) {
    if (mul(0, g) != g || mul(g, 0) != g) throw InputError("index 0 is not the identity");
  }
  // Latin square: every row and column a permutation.
  std::vector<std::uint32_t> seen(order_, 0);
  std::uint32_t stamp = 0;
  for (Elem a = 0; a < order_; ++a) {
    ++stamp;
    for (Elem b = 0; b < order_; ++b) {
      Elem p = mul(a, b);
      if (seen[p] == stamp) throw InputError("multiplication table row " + std::to_string(a) + " is not a permutation");
      seen[p] = stamp;
    }
  }
  std::fill(seen.begin(), seen.end(), 0);
  stamp = 0;
  for (Elem b = 0; b < order_; ++b) {
    ++stamp;
    for (Elem a = 0; a < order_; ++a) {
      Elem p = mul(a, b);
      if (seen[p] == stamp) throw InputError("multiplication table column " + std::to_string(b) + " is not a permutation");
      seen[p] = stamp;
    }
  }
  inv_.assign(order_, 0);
  for (Elem a = 0; a < order_; ++a) {
    auto r = row(a);
    inv_[a] = static_cast<Elem>(std::find(r.begin(), r.end(), Elem{0}) - r.begin());
  }
  for (Elem a = 0; a < order_; ++a)
    if (mul(inv_[a], a) != 0) throw InputError("left and right inverses differ");

  auto check = [&](Elem a, Elem b, Elem c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw InputError("multiplication is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                       "," + std::to_string(c) + ")");
  };
  if (order_ <= 64) {
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = 0; b < order_; ++b)
        for (Elem c = 0; c < order_; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Elem> dist(0, static_cast<Elem>(order_ - 1));
    for (int i = 0; i < 100000; ++i) check(dist(rng), dist(rng), dist(rng));
  }
}

Elem FiniteGroup::pow(Elem a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem result = 0;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<std::size_t> FiniteGroup::element_orders() const {
  std::vector<std::size_t> out(order_);
  for (Elem a = 0; a < order_; ++a) out[a] = element_order(a);
  return out;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::size_t> FiniteGroup::class_sizes() const {
  std::vector<std::size_t> out(order_);
  for (Elem g = 0; g < order_; ++g) {
    std::size_t centralizer = 0;
    for (Elem x = 0; x < order_; ++x)
      if (mul(g, x) == mul(x, g)) ++centralizer;
    out[g] = order_ / centralizer;
  }
  return out;
}

std::vector<std::size_t> FiniteGroup::conjugacy_classes() const {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cls(order_, unset);
  std::size_t next = 0;
  for (Elem g = 0; g < order_; ++g) {
    if (cls[g] != unset) continue;
    for (Elem x = 0; x < order_; ++x) cls[conj(x, g)] = next;
    ++next;
  }
  return cls;
}

std::vector<Elem> FiniteGroup::center() const {
  std::vector<Elem> out;
  for (Elem g = 0; g < order_; ++g) {
    bool central = true;
    for (Elem x = 0; x < order_ && central; ++x) central = mul(g, x) == mul(x, g);
    if (central) out.push_back(g);
  }
  return out;
}

std::vector<Elem> generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem s : gens) {
      Elem y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::vector<Elem> current{0};
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  while (current.size() < g.order()) {
    std::size_t best_size = 0;
    Elem best = 0;
    std::vector<Elem> best_members;
    std::vector<Elem> trial = gens;
    trial.push_back(0);
    for (Elem x = 1; x < g.order(); ++x) {
      if (in[x]) continue;
      trial.back() = x;
      auto members = generated_subgroup(g, trial);
      if (members.size() > best_size) {
        best_size = members.size();
        best = x;
        best_members = std::move(members);
        if (best_size == g.order()) break;
      }
    }
    gens.push_back(best);
    current = std::move(best_members);
    std::fill(in.begin(), in.end(), 0);
    for (Elem m : current) in[m] = 1;
  }
  return gens;
}

// Construction.

namespace {

std::size_t checked_factorial(std::size_t n, std::size_t cap) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > 2 * cap) return f;
  }
  return f;
}

FiniteGroup cyclic(std::size_t n, std::string spec) {
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>((a + b) % n);
  return FiniteGroup(n, std::move(t), std::move(spec));
}

// r^k s^e is index k + o*e.
FiniteGroup dihedral(std::size_t o, std::string spec) {
  std::size_t n = 2 * o;
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t a = x % o, e = x / o;
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t b = y % o, f = y / o;
      std::size_t k = e == 0 ? (a + b) % o : (a + o - b) % o;
      t[x * n + y] = static_cast<Elem>(k + o * ((e + f) % 2));
    }
  }
  return FiniteGroup(n, std::move(t), std::move(spec));
}

// 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
FiniteGroup quaternion(std::string spec) {
  // unit products for 1,i,j,k as (sign, unit)
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int unit_res[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<Elem> t(64);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      int ux = x / 2, uy = y / 2;
      int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * unit_sign[ux][uy];
      t[x * 8 + y] = static_cast<Elem>(2 * unit_res[ux][uy] + (sign < 0 ? 1 : 0));
    }
  }
  return FiniteGroup(8, std::move(t), std::move(spec));
}

bool is_even(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

// Permutations in lexicographic order (identity first); (ab)(x) = a(b(x)).
FiniteGroup permutation_group(std::size_t degree, bool even_only, std::string spec) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(degree);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!even_only || is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto key = [](const std::vector<int>& q) {
    std::uint64_t k = 0;
    for (int v : q) k = k * 16 + static_cast<std::uint64_t>(v);
    return k;
  };
  std::unordered_map<std::uint64_t, Elem> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(key(perms[i]), static_cast<Elem>(i));
  std::size_t n = perms.size();
  std::vector<Elem> t(n * n);
  std::vector<int> c(degree);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < degree; ++x) c[x] = perms[a][static_cast<std::size_t>(perms[b][x])];
      t[a * n + b] = index.at(key(c));
    }
  }
  return FiniteGroup(n, std::move(t), std::move(spec));
}

std::size_t parse_count(const std::string& s, const std::string& spec) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InputError("invalid number in group spec '" + spec + "'");
  return std::stoul(s);
}

// Splits "(a)x(b)x(c)" into {"a","b","c"}; "(a)^n" into {"a"} with rest "^n".
std::vector<std::string> parenthesized(const std::string& body, const std::string& spec, std::string& rest) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < body.size() && body[i] == '(') {
    int depth = 0;
    std::size_t start = i + 1;
    for (; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')' && --depth == 0) break;
    }
    if (i >= body.size()) throw InputError("unbalanced parentheses in group spec '" + spec + "'");
    parts.push_back(body.substr(start, i - start));
    ++i;
    if (i < body.size() && body[i] == 'x' && i + 1 < body.size() && body[i + 1] == '(') ++i;
  }
  rest = body.substr(i);
  if (parts.empty()) throw InputError("expected '(' in group spec '" + spec + "'");
  return parts;
}

void check_order(std::size_t order, const Limits& limits, const std::string& spec) {
  if (order > limits.order_cap)
    throw CapExceeded("group '" + spec + "' has order " + std::to_string(order) + " above the order cap " +
                      std::to_string(limits.order_cap));
}

}  // namespace

FiniteGroup direct_product(const std::vector<const FiniteGroup*>& factors, std::string spec, const Limits& limits) {
  std::size_t n = 1;
  for (const auto* f : factors) {
    n *= f->order();
    check_order(n, limits, spec);
  }
  std::vector<std::size_t> radix;
  for (const auto* f : factors) radix.push_back(f->order());
  std::vector<Elem> t(n * n);
  std::vector<std::size_t> da(factors.size()), db(factors.size());
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t x = a;
    for (std::size_t k = 0; k < radix.size(); ++k) {
      da[k] = x % radix[k];
      x /= radix[k];
    }
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t y = b;
      for (std::size_t k = 0; k < radix.size(); ++k) {
        db[k] = y % radix[k];
        y /= radix[k];
      }
      std::size_t idx = 0;
      for (std::size_t k = radix.size(); k-- > 0;)
        idx = idx * radix[k] + factors[k]->mul(static_cast<Elem>(da[k]), static_cast<Elem>(db[k]));
      t[a * n + b] = static_cast<Elem>(idx);
    }
  }
  return FiniteGroup(n, std::move(t), std::move(spec));
}

FiniteGroup direct_power(const FiniteGroup& g, std::size_t n, const Limits& limits) {
  if (n < 1) throw InputError("direct power exponent must be positive");
  std::vector<const FiniteGroup*> factors(n, &g);
  return direct_product(factors, "pow:(" + g.spec() + ")^" + std::to_string(n), limits);
}

FiniteGroup make_group(const std::string& spec, const Limits& limits) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "q8" && colon == std::string::npos) return quaternion(spec);
  if (colon == std::string::npos) throw InputError("unknown group spec '" + spec + "'");
  if (kind == "cyc") {
    std::size_t n = parse_count(body, spec);
    if (n < 1) throw InputError("cyc:n requires n >= 1");
    check_order(n, limits, spec);
    return cyclic(n, spec);
  }
  if (kind == "dih") {
    std::size_t o = parse_count(body, spec);
    if (o < 1) throw InputError("dih:o requires o >= 1");
    check_order(2 * o, limits, spec);
    return dihedral(o, spec);
  }
  if (kind == "sym" || kind == "alt") {
    std::size_t n = parse_count(body, spec);
    if (n < 1) throw InputError(kind + ":n requires n >= 1");
    std::size_t order = checked_factorial(n, limits.order_cap);
    if (kind == "alt" && n >= 2) order /= 2;
    check_order(order, limits, spec);
    return permutation_group(n, kind == "alt", spec);
  }
  if (kind == "prod") {
    std::string rest;
    auto parts = parenthesized(body, spec, rest);
    if (!rest.empty() || parts.size() < 2) throw InputError("malformed product spec '" + spec + "'");
    std::vector<FiniteGroup> groups;
    for (const auto& p : parts) groups.push_back(make_group(p, limits));
    std::vector<const FiniteGroup*> ptrs;
    for (const auto& g : groups) ptrs.push_back(&g);
    return direct_product(ptrs, spec, limits);
  }
  if (kind == "pow") {
    std::string rest;
    auto parts = parenthesized(body, spec, rest);
    if (parts.size() != 1 || rest.size() < 2 || rest[0] != '^') throw InputError("malformed power spec '" + spec + "'");
    std::size_t n = parse_count(rest.substr(1), spec);
    if (n < 1) throw InputError("pow exponent must be >= 1");
    auto base = make_group(parts[0], limits);
    std::vector<const FiniteGroup*> factors(n, &base);
    return direct_product(factors, spec, limits);
  }
  if (kind == "table") {
    auto g = load_cayley_table(body);
    check_order(g.order(), limits, spec);
    return g;
  }
  throw InputError("unknown group spec '" + spec + "'");
}

FiniteGroup read_cayley_table(std::istream& in, std::string spec) {
  std::string line;
  auto next_line = [&](std::size_t lineno) {
    if (!std::getline(in, line)) throw InputError("malformed table file: missing line " + std::to_string(lineno));
  };
  next_line(1);
  std::istringstream head(line);
  long long n = 0;
  std::string extra;
  if (!(head >> n) || n <= 0 || (head >> extra)) throw InputError("malformed table file: bad order line");
  auto order = static_cast<std::size_t>(n);
  std::vector<Elem> table;
  table.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    next_line(r + 2);
    std::istringstream row(line);
    long long v;
    std::size_t count = 0;
    while (row >> v) {
      if (v < 0 || static_cast<std::size_t>(v) >= order)
        throw InputError("malformed table file: entry out of range on line " + std::to_string(r + 2));
      table.push_back(static_cast<Elem>(v));
      ++count;
    }
    if (!row.eof() || count != order)
      throw InputError("malformed table file: line " + std::to_string(r + 2) + " needs " + std::to_string(order) +
                       " indices");
  }
  for (std::size_t g = 0; g < order; ++g)
    if (table[g] != g || table[g * order] != g)
      throw InputError("malformed table file: row/column 0 is not the identity permutation");
  return FiniteGroup(order, std::move(table), std::move(spec));
}

FiniteGroup load_cayley_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open table file '" + path + "'");
  return read_cayley_table(in, "table:" + path);
}

void write_cayley_table(std::ostream& out, const FiniteGroup& g) {
  out << g.order() << '\n';
  for (Elem a = 0; a < g.order(); ++a) {
    auto r = g.row(a);
    for (std::size_t b = 0; b < r.size(); ++b) out << (b ? " " : "") << r[b];
    out << '\n';
  }
}

FiniteGroup relabel(const FiniteGroup& g, const std::vector<Elem>& perm) {
  std::size_t n = g.order();
  if (perm.size() != n || perm[0] != 0) throw InputError("relabeling must be a permutation fixing 0");
  std::vector<Elem> t(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[perm[a] * n + perm[b]] = perm[g.mul(a, b)];
  return FiniteGroup(n, std::move(t), g.spec() + " (relabeled)");
}

}  // namespace wfl
