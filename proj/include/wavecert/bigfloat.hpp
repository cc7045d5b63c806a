// =============================================================================
// bigfloat.hpp
//
// Software-controlled-precision floating value on top of MPFR. Precision is
// carried per value; binary operations round to the wider operand's
// precision (MPFR_RNDN), so results never depend on hardware FP state and
// are bit-reproducible across machines. Used only on the non-rigorous
// paths (Galerkin solver, Atilde inversion); rigorous bounds never touch it.
// =============================================================================
#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

#include "wavecert/rational.hpp"

namespace wavecert {

class BigFloat {
 public:
  static constexpr int kDefaultBits = 128;

  static int bits_for_digits(int decimal_digits) {
    // ceil(d * log2(10)) plus guard bits
    return static_cast<int>(decimal_digits * 3.3219280948873626) + 16;
  }

  BigFloat() { mpfr_init2(v_, kDefaultBits); mpfr_set_zero(v_, 1); }
  BigFloat(long n) : BigFloat() { mpfr_set_si(v_, n, MPFR_RNDN); }  // NOLINT
  BigFloat(int n) : BigFloat(static_cast<long>(n)) {}               // NOLINT
  BigFloat(double d) : BigFloat() { mpfr_set_d(v_, d, MPFR_RNDN); }  // NOLINT

  // zero at the given precision
  static BigFloat with_bits(int bits) { return BigFloat(bits, PrecTag{}); }

  static BigFloat from_rational(const Rational& r, int bits) {
    BigFloat f = with_bits(bits);
    mpfr_set_q(f.v_, r.raw(), MPFR_RNDN);
    return f;
  }
  static BigFloat from_double(double d, int bits) {
    BigFloat f = with_bits(bits);
    mpfr_set_d(f.v_, d, MPFR_RNDN);
    return f;
  }
  // 10^k at the given precision (k of any sign).
  static BigFloat decimal_power(long k, int bits) {
    BigFloat f = with_bits(bits);
    mpfr_ui_pow_ui(f.v_, 10u, static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDN);
    if (k < 0) mpfr_ui_div(f.v_, 1u, f.v_, MPFR_RNDN);
    return f;
  }

  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~BigFloat() { mpfr_clear(v_); }

  int precision_bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r = with_bits(wider(a, b)); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r = with_bits(wider(a, b)); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r = with_bits(wider(a, b)); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r = with_bits(wider(a, b)); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r = with_bits(a.precision_bits()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r;
  }
  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_nan_p(a.v_) || mpfr_nan_p(b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r = with_bits(a.precision_bits()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r = with_bits(a.precision_bits()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r;
  }

  // Exact value as a rational (every finite BigFloat is dyadic).
  Rational exact_rational() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int significant = 17) const;

 private:
  struct PrecTag {};
  BigFloat(int bits, PrecTag) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  static int wider(const BigFloat& a, const BigFloat& b) {
    return a.precision_bits() > b.precision_bits() ? a.precision_bits() : b.precision_bits();
  }
  mpfr_t v_;
};

}  // namespace wavecert
