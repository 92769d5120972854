#include <doctest.h>

#include <random>
#include <set>

#include "wfl/words.hpp"

using namespace wfl;

namespace {

ReducedWord raw(std::vector<Letter> letters) { return ReducedWord(std::move(letters)); }

std::size_t error_position(const std::string& text) {
  try {
    parse_word(text, true);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error for '" << text << "'");
  return 0;
}

ReducedWord random_word(std::mt19937_64& rng, std::size_t max_len, int vars) {
  std::uniform_int_distribution<int> var(1, vars), sign(0, 1);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::vector<Letter> letters;
  std::size_t target = len(rng);
  while (letters.size() < target) {
    Letter l{var(rng), sign(rng) ? 1 : -1};
    if (!letters.empty() && letters.back() == l.inverse()) continue;
    letters.push_back(l);
  }
  return ReducedWord(letters).normalized();
}

}  // namespace

TEST_CASE("parse expands exponents and commutators") {
  CHECK(parse_word("[x1,x2]") == raw({{1, 1}, {2, 1}, {1, -1}, {2, -1}}));
  CHECK(parse_word("x1^2") == raw({{1, 1}, {1, 1}}));
  CHECK(parse_word("x1^-3") == raw({{1, -1}, {1, -1}, {1, -1}}));
  CHECK(parse_word("x1*x2 * x1") == parse_word("x1 x2 x1"));
  // [[x1,x2],x3] = [x1,x2] x3 [x1,x2]^-1 x3^-1
  CHECK(format_word(parse_word("[[x1,x2],x3]")) ==
        "x1 x2 x1^-1 x2^-1 x3 x2 x1 x2^-1 x1^-1 x3^-1");
  CHECK(parse_word("[x1 x2, x3^2]").length() == 8);
}

TEST_CASE("parse normalizes and reduces") {
  CHECK(parse_word("x3 x7 x3") == parse_word("x1 x2 x1"));
  CHECK(parse_word("x1 x2 x2^-1 x1^-1").empty());
  CHECK(parse_word("x2 x1 x1^-1 x3") == parse_word("x1 x2"));
  CHECK(parse_word("") .empty());
  CHECK(parse_word("[x1,x1]").empty());
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_position("x1 y2") == 3);
  CHECK(error_position("x0") == 1);
  CHECK(error_position("x1^0") == 3);
  CHECK(error_position("[x1,x2") == 6);
  CHECK_THROWS_AS(parse_word("", true), InputError);
  CHECK_THROWS_AS(parse_word("x1 x1^-1", true), InputError);
}

TEST_CASE("free reduction") {
  CHECK(free_reduce({{1, 1}, {2, 1}, {2, -1}, {1, -1}, {3, 1}}) == raw({{3, 1}}));
  CHECK_THROWS_AS(raw({{1, 1}, {1, -1}}), InputError);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::vector<Letter> letters;
    for (int i = 0; i < 12; ++i) letters.push_back({1 + int(rng() % 3), rng() % 2 ? 1 : -1});
    ReducedWord once = free_reduce(letters);
    CHECK(once.length() <= letters.size());
    CHECK(free_reduce(once.letters()) == once);
    for (std::size_t i = 1; i < once.length(); ++i) CHECK(once[i] != once[i - 1].inverse());
  }
}

TEST_CASE("format and parse round trip") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    ReducedWord w = random_word(rng, 20, 5);
    CHECK(parse_word(format_word(w)) == w);
  }
  CHECK(format_word(parse_word("[x1,x2]")) == "x1 x2 x1^-1 x2^-1");
}

TEST_CASE("word summaries") {
  ReducedWord w = parse_word("x1 x2 x1");
  CHECK(w.length() == 3);
  CHECK(w.distinct_vars() == 2);
  CHECK(w.arity() == 2);
  CHECK(w.occurrences() == std::vector<std::size_t>{2, 1});
  CHECK(w.inverse() == raw({{1, -1}, {2, -1}, {1, -1}}));
}

TEST_CASE("M(d,l) closed form equals the series") {
  CHECK(m_constant(1, 1) == 341);
  CHECK(m_prime(1) == 341);
  for (std::size_t d = 1; d <= 6; ++d) {
    for (std::size_t l = 1; l <= 6; ++l) {
      BigInt b = BigInt(static_cast<unsigned long>(2 * l * (d + 1)));
      BigInt sum = 0, term = 1;
      for (std::size_t i = 0; i <= 2 * l + 2; ++i) {
        sum += term;
        term *= b;
      }
      CHECK(m_constant(d, l) == sum);
    }
  }
  CHECK_THROWS_AS(m_constant(0, 1), InputError);
}

TEST_CASE("terminal segments") {
  ReducedWord w = parse_word("[x1,x2]");
  CHECK(terminal_segment(w, 1) == raw({{2, -1}}));
  CHECK(terminal_segment(w, 0).empty());
  CHECK(terminal_segment(w, 4) == w);
  CHECK(terminal_segment(parse_word("x1 x2 x3"), 2) == raw({{2, 1}, {3, 1}}));
  CHECK_THROWS_AS(terminal_segment(w, 5), InputError);
}

TEST_CASE("variation counts") {
  CHECK(variation_count(parse_word("[x1,x2]")) == 16);
  CHECK(variations(parse_word("[x1,x2]")).size() == 16);
  CHECK(variation_count(parse_word("x1 x2 x3")) == 1);
  CHECK(variation_count(parse_word("x1^3")) == 27);
  CHECK(variations(parse_word("x1^3")).size() == 27);
}

TEST_CASE("variations are distinct, reduced and of length l") {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 60) {
    ReducedWord w = random_word(rng, 5, 3);
    if (w.empty()) continue;
    auto occ = w.occurrences();
    if (*std::max_element(occ.begin(), occ.end()) > 3) continue;
    ++checked;
    auto all = variations(w);
    CHECK(BigInt(static_cast<unsigned long>(all.size())) == variation_count(w));
    std::set<std::vector<PairLetter>> unique;
    for (const auto& v : all) {
      unique.insert(v.letters());
      CHECK(v.flattened().length() == w.length());
      CHECK(free_reduce(v.flattened().letters()) == v.flattened());
      CHECK(is_variation(v, w));
      CHECK(project_variation(v) == w);
    }
    CHECK(unique.size() == all.size());
  }
}

TEST_CASE("variation classification") {
  ReducedWord w = parse_word("[x1,x2]");
  VariationWord good({{1, 2, 1}, {2, 1, 1}, {1, 1, -1}, {2, 1, -1}});
  VariationWord bad({{1, 3, 1}, {2, 1, 1}, {1, 2, -1}, {2, 2, -1}});
  CHECK(is_variation(good, w));
  CHECK_FALSE(is_variation(bad, w));
  CHECK(project_variation(good) == w);
  CHECK(format_variation(good) == "X1,2 X2,1 X1,1^-1 X2,1^-1");
  // fresh variables by first occurrence of (k,t)
  CHECK(format_word(good.flattened()) == "x1 x2 x3^-1 x2^-1");

  VariationWord ones({{1, 1, 1}, {2, 1, 1}, {1, 1, -1}, {2, 1, -1}});
  CHECK(is_variation(ones, w));
  CHECK(project_variation(ones) == w);
  VariationWord single({{1, 1, 1}});
  CHECK(project_variation(single) == parse_word("x1"));
  CHECK(variations(parse_word("x1")).size() == 1);
}

TEST_CASE("project round trip over battery words") {
  for (const char* text : {"x1^2", "x1^3", "x1 x2 x1", "[x1,x2]"}) {
    ReducedWord w = parse_word(text);
    for (const auto& v : variations(w)) CHECK(project_variation(v) == w);
  }
}

TEST_CASE("variations enumerate lexicographically") {
  auto all = variations(parse_word("x1^2"));
  REQUIRE(all.size() == 4);
  CHECK(format_variation(all[0]) == "X1,1 X1,1");
  CHECK(format_variation(all[1]) == "X1,1 X1,2");
  CHECK(format_variation(all[2]) == "X1,2 X1,1");
  CHECK(format_variation(all[3]) == "X1,2 X1,2");
}
