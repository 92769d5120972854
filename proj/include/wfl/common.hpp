#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace wfl {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Group elements are dense indices; the identity is always 0.
using Elem = std::uint32_t;
inline constexpr Elem kIdentity = 0;

inline constexpr const char* kVersion = "1.0.0";

// Error kinds map one-to-one onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A configured size cap or evaluation budget would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Caps and budgets. Exceeding any of them raises CapExceeded.
struct Limits {
  std::size_t order_cap = 4096;
  std::size_t aut_group_order_cap = 512;
  std::size_t autset_cap = 50000;
  std::size_t subgroup_order_cap = 200;
  std::size_t normal_order_cap = 360;
  std::size_t isomorphism_order_cap = 512;
  std::uint64_t budget = 100000000;
  unsigned threads = 1;

  /// Defaults overridden by WFL_THREADS / WFL_BUDGET when set.
  static Limits from_env();
};

const Limits& default_limits();

std::string to_string(const BigInt& v);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const BigRational& v);
BigRational parse_rational(const std::string& text);

}  // namespace wfl
