#include "wfl/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace wfl {

namespace {

bool cancels(const Letter& a, const Letter& b) { return a.var == b.var && a.sign == -b.sign; }

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  std::vector<Letter> parse() {
    auto letters = sequence();
    skip_separators();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return letters;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("word syntax error: " + msg, pos_); }

  void skip_separators() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*'))
      ++pos_;
  }

  std::vector<Letter> sequence() {
    std::vector<Letter> out;
    for (;;) {
      skip_separators();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == 'x') {
        auto atom_letters = atom();
        out.insert(out.end(), atom_letters.begin(), atom_letters.end());
      } else if (c == '[') {
        auto br = bracket();
        out.insert(out.end(), br.begin(), br.end());
      } else {
        break;
      }
    }
    return out;
  }

  long number(bool allow_sign) {
    std::size_t start = pos_;
    bool negative = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t digits_start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000) {
        pos_ = start;
        fail("number too large");
      }
      ++pos_;
    }
    if (pos_ == digits_start) {
      pos_ = start;
      fail("expected a decimal number");
    }
    return negative ? -value : value;
  }

  std::vector<Letter> atom() {
    ++pos_;  // 'x'
    std::size_t var_pos = pos_;
    long var = number(false);
    if (var < 1) {
      pos_ = var_pos;
      fail("variable index must be positive");
    }
    long exponent = 1;
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      std::size_t exp_pos = pos_;
      exponent = number(true);
      if (exponent == 0) {
        pos_ = exp_pos;
        fail("exponent must be nonzero");
      }
    }
    int sign = exponent > 0 ? 1 : -1;
    return std::vector<Letter>(static_cast<std::size_t>(exponent > 0 ? exponent : -exponent),
                               Letter{static_cast<int>(var), sign});
  }

  std::vector<Letter> bracket() {
    ++pos_;  // '['
    auto first = sequence();
    skip_separators();
    if (pos_ >= text_.size() || text_[pos_] != ',') fail("expected ',' in commutator");
    ++pos_;
    auto second = sequence();
    skip_separators();
    if (pos_ >= text_.size() || text_[pos_] != ']') fail("expected ']' closing commutator");
    ++pos_;
    std::vector<Letter> out = first;
    out.insert(out.end(), second.begin(), second.end());
    for (auto it = first.rbegin(); it != first.rend(); ++it) out.push_back(it->inverse());
    for (auto it = second.rbegin(); it != second.rend(); ++it) out.push_back(it->inverse());
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ReducedWord::ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].var < 1) throw InputError("variable index must be positive");
    if (letters_[i].sign != 1 && letters_[i].sign != -1) throw InputError("letter sign must be +1 or -1");
    if (i > 0 && cancels(letters_[i - 1], letters_[i]))
      throw InputError("word is not freely reduced at position " + std::to_string(i));
  }
}

std::size_t ReducedWord::distinct_vars() const {
  std::vector<int> vars;
  for (const auto& l : letters_) vars.push_back(l.var);
  std::sort(vars.begin(), vars.end());
  return static_cast<std::size_t>(std::unique(vars.begin(), vars.end()) - vars.begin());
}

std::size_t ReducedWord::variable_slots() const {
  int m = 0;
  for (const auto& l : letters_) m = std::max(m, l.var);
  return static_cast<std::size_t>(m);
}

std::vector<std::size_t> ReducedWord::occurrences() const {
  std::vector<std::size_t> counts(variable_slots(), 0);
  for (const auto& l : letters_) ++counts[static_cast<std::size_t>(l.var - 1)];
  return counts;
}

ReducedWord ReducedWord::normalized() const {
  std::map<int, int> rename;
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (const auto& l : letters_) {
    auto [it, inserted] = rename.try_emplace(l.var, static_cast<int>(rename.size()) + 1);
    out.push_back({it->second, l.sign});
  }
  return ReducedWord(std::move(out));
}

bool ReducedWord::is_normalized() const { return normalized() == *this; }

ReducedWord ReducedWord::inverse() const {
  std::vector<Letter> out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return ReducedWord(std::move(out));
}

ReducedWord free_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> stack;
  for (const auto& l : letters) {
    if (!stack.empty() && cancels(stack.back(), l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return ReducedWord(std::move(stack));
}

ReducedWord parse_word(std::string_view text, bool require_nonempty) {
  auto w = free_reduce(WordParser(text).parse()).normalized();
  if (require_nonempty && w.empty()) throw InputError("word is empty after free reduction");
  return w;
}

std::string format_word(const ReducedWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += ' ';
    out += 'x' + std::to_string(w[i].var);
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

BigInt m_constant(std::size_t d, std::size_t l) {
  if (d < 1 || l < 1) throw InputError("M(d,l) requires d >= 1 and l >= 1");
  BigInt base = BigInt(2 * l) * BigInt(d + 1);
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), 2 * l + 3);
  return BigInt((power - 1) / (base - 1));
}

ReducedWord terminal_segment(const ReducedWord& w, std::size_t j) {
  if (j > w.length()) throw InputError("terminal segment length out of range");
  return ReducedWord(std::vector<Letter>(w.letters().end() - static_cast<std::ptrdiff_t>(j), w.letters().end()));
}

VariationWord::VariationWord(std::vector<PairLetter> letters) : letters_(std::move(letters)) {
  std::map<std::pair<int, int>, int> fresh;
  std::vector<Letter> flat;
  flat.reserve(letters_.size());
  for (const auto& pl : letters_) {
    auto key = std::make_pair(pl.var, pl.second);
    auto [it, inserted] = fresh.try_emplace(key, static_cast<int>(fresh.size()) + 1);
    if (inserted) fresh_map_.push_back(key);
    flat.push_back({it->second, pl.sign});
  }
  flattened_ = ReducedWord(std::move(flat));
}

std::string format_variation(const VariationWord& v) {
  std::string out;
  for (std::size_t i = 0; i < v.length(); ++i) {
    const auto& pl = v.letters()[i];
    if (i) out += ' ';
    out += 'X' + std::to_string(pl.var) + ',' + std::to_string(pl.second);
    if (pl.sign < 0) out += "^-1";
  }
  return out;
}

VariationEnumerator::VariationEnumerator(const ReducedWord& w)
    : word_(w), counts_(w.occurrences()), seconds_(w.length(), 1) {
  if (w.empty()) throw InputError("variations require a nonempty word");
}

std::optional<VariationWord> VariationEnumerator::next() {
  if (done_) return std::nullopt;
  std::vector<PairLetter> letters;
  letters.reserve(word_.length());
  for (std::size_t i = 0; i < word_.length(); ++i)
    letters.push_back({word_[i].var, seconds_[i], word_[i].sign});
  VariationWord out(std::move(letters));

  // Odometer, last position fastest: lexicographic in (t_1,...,t_l).
  std::size_t i = word_.length();
  for (;;) {
    if (i == 0) {
      done_ = true;
      break;
    }
    --i;
    if (static_cast<std::size_t>(seconds_[i]) < counts_[word_.slot(i)]) {
      ++seconds_[i];
      break;
    }
    seconds_[i] = 1;
  }
  return out;
}

std::vector<VariationWord> variations(const ReducedWord& w) {
  std::vector<VariationWord> out;
  VariationEnumerator en(w);
  while (auto v = en.next()) out.push_back(std::move(*v));
  return out;
}

BigInt variation_count(const ReducedWord& w) {
  if (w.empty()) throw InputError("variations require a nonempty word");
  BigInt total = 1;
  for (auto a : w.occurrences()) {
    if (a == 0) continue;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), a, a);
    total *= p;
  }
  return total;
}

bool is_variation(const VariationWord& candidate, const ReducedWord& w) {
  if (candidate.length() != w.length()) return false;
  auto counts = w.occurrences();
  for (std::size_t i = 0; i < w.length(); ++i) {
    const auto& pl = candidate.letters()[i];
    if (pl.var != w[i].var || pl.sign != w[i].sign) return false;
    if (pl.second < 1 || static_cast<std::size_t>(pl.second) > counts[w.slot(i)]) return false;
  }
  return true;
}

ReducedWord project_variation(const VariationWord& v) {
  std::vector<Letter> letters;
  for (const auto& pl : v.letters()) letters.push_back({pl.var, pl.sign});
  return free_reduce(letters);
}

}  // namespace wfl
