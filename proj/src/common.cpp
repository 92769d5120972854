#include "wfl/common.hpp"

#include <cctype>
#include <cstdlib>
#include <thread>

namespace wfl {

Limits Limits::from_env() {
  Limits l;
  unsigned hw = std::thread::hardware_concurrency();
  l.threads = hw == 0 ? 1 : hw;
  if (const char* t = std::getenv("WFL_THREADS")) {
    long v = std::strtol(t, nullptr, 10);
    if (v > 0) l.threads = static_cast<unsigned>(v);
  }
  if (const char* b = std::getenv("WFL_BUDGET")) {
    unsigned long long v = std::strtoull(b, nullptr, 10);
    if (v > 0) l.budget = v;
  }
  return l;
}

const Limits& default_limits() {
  static const Limits limits = Limits::from_env();
  return limits;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const BigRational& v) {
  BigRational c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

BigRational parse_rational(const std::string& text) {
  auto bad = [&] { return InputError("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  BigRational out;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw bad();
    BigInt d(strip_plus(den));
    if (d == 0) throw bad();
    out = BigRational(BigInt(strip_plus(num)), d);
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    std::string w = whole.empty() || whole == "-" || whole == "+" ? "0" : strip_plus(whole);
    if (!is_int(w) || (!frac.empty() && !is_int(frac)) || (frac.size() && (frac[0] == '-' || frac[0] == '+')))
      throw bad();
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt abs_whole = abs(BigInt(w));
    BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    out = BigRational(abs_whole * scale + f, scale);
    if (negative || BigInt(w) < 0) out = -out;
  } else {
    if (!is_int(text)) throw bad();
    out = BigRational(BigInt(strip_plus(text)), 1);
  }
  out.canonicalize();
  return out;
}

}  // namespace wfl
