#include "wfl/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

namespace wfl {

void widen_exponent_range() {
  mpfr_set_emax(mpfr_get_emax_max());
  mpfr_set_emin(mpfr_get_emin_min());
}

Real::Real(Bits precision) {
  mpfr_init2(value_, precision.value);
  mpfr_set_zero(value_, 1);
}

Real::Real(long v, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(const BigInt& v, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  mpfr_init2(value_, precision);
  mpfr_set_z(value_, v.get_mpz_t(), rnd);
}

Real::Real(const BigRational& v, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, v.get_mpq_t(), rnd);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits - 1) + "RNe";
  if (mpfr_asprintf(&buf, fmt.c_str(), value_) < 0) return "nan";
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

namespace {

mpfr_prec_t max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(Bits{max_prec(a, b)});
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(Bits{max_prec(a, b)});
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(Bits{max_prec(a, b)});
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(Bits{max_prec(a, b)});
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real ln(const Real& x, mpfr_rnd_t rnd) {
  Real r(Bits{x.precision()});
  mpfr_log(r.get(), x.get(), rnd);
  return r;
}

Real ln(const BigInt& x, mpfr_prec_t precision) {
  // Guard against rounding of huge integers: convert with extra bits.
  Real v(x, precision + 64);
  Real r(Bits{precision});
  mpfr_log(r.get(), v.get(), MPFR_RNDN);
  return r;
}

Real ln(const BigRational& x, mpfr_prec_t precision) {
  Real num = ln(BigInt(x.get_num()), precision + 32);
  Real den = ln(BigInt(x.get_den()), precision + 32);
  Real r(Bits{precision});
  mpfr_sub(r.get(), num.get(), den.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x, mpfr_rnd_t rnd) {
  Real r(Bits{x.precision()});
  mpfr_exp(r.get(), x.get(), rnd);
  return r;
}

Real sqrt(const Real& x) {
  Real r(Bits{x.precision()});
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real ln_factorial(const Real& x) {
  Real arg(Bits{x.precision() + 32});
  mpfr_add_ui(arg.get(), x.get(), 1, MPFR_RNDN);
  Real r(Bits{x.precision()});
  mpfr_lngamma(r.get(), arg.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

BigInt floor_to_int(const Real& x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDD);
  return r;
}

BigInt ceil_to_int(const Real& x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDU);
  return r;
}

}  // namespace wfl
