#pragma once

#include <string>

#include <mpfr.h>

#include "wfl/common.hpp"

namespace wfl {

/// Precision tag for a zero-initialized Real.
struct Bits {
  mpfr_prec_t value;
};

/// Owning MPFR value with its own precision.
class Real {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  Real() : Real(Bits{kDefaultPrecision}) {}
  explicit Real(Bits precision);
  Real(long v, mpfr_prec_t precision = kDefaultPrecision);
  Real(const BigInt& v, mpfr_prec_t precision = kDefaultPrecision, mpfr_rnd_t rnd = MPFR_RNDN);
  Real(const BigRational& v, mpfr_prec_t precision = kDefaultPrecision, mpfr_rnd_t rnd = MPFR_RNDN);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 50) const;

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

/// Widens MPFR's exponent range to the maximum for the calling thread.
void widen_exponent_range();

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

Real ln(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
Real ln(const BigInt& x, mpfr_prec_t precision = Real::kDefaultPrecision);
Real ln(const BigRational& x, mpfr_prec_t precision = Real::kDefaultPrecision);
Real exp(const Real& x, mpfr_rnd_t rnd = MPFR_RNDN);
Real sqrt(const Real& x);
/// ln Gamma(x + 1) = ln(x!)
Real ln_factorial(const Real& x);
Real max(const Real& a, const Real& b);

/// Floor / ceiling to an exact integer (x must be finite).
BigInt floor_to_int(const Real& x);
BigInt ceil_to_int(const Real& x);

}  // namespace wfl
