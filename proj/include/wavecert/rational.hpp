// =============================================================================
// rational.hpp
//
// Exact rational scalar on top of GMP's mpq_t. Every value is kept in
// canonical form (denominator > 0, gcd(|num|, den) = 1), and no operation
// ever rounds. All rigorous quantities in this library live in this type.
// =============================================================================
#pragma once

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavecert {

class Rational {
 public:
  Rational() noexcept { mpq_init(v_); }  // zero
  Rational(long n) : Rational() { mpq_set_si(v_, n, 1); }  // NOLINT: implicit by design
  Rational(int n) : Rational(static_cast<long>(n)) {}      // NOLINT

  // num/den, canonicalized. den must be nonzero.
  Rational(long num, long den);

  Rational(const Rational& o) { mpq_init(v_); mpq_set(v_, o.v_); }
  Rational(Rational&& o) noexcept { mpq_init(v_); mpq_swap(v_, o.v_); }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(v_, o.v_);
    return *this;
  }
  ~Rational() { mpq_clear(v_); }

  // 10^k for any sign of k.
  static Rational decimal_power(long k);

  // Accepts "123", "-4/5", "+7/9". Anything else (floats included) is rejected.
  static std::optional<Rational> parse(std::string_view text);

  bool is_zero() const { return mpq_sgn(v_) == 0; }
  int sign() const { return mpq_sgn(v_); }

  Rational& operator+=(const Rational& o) { mpq_add(v_, v_, o.v_); return *this; }
  Rational& operator-=(const Rational& o) { mpq_sub(v_, v_, o.v_); return *this; }
  Rational& operator*=(const Rational& o) { mpq_mul(v_, v_, o.v_); return *this; }
  Rational& operator/=(const Rational& o);  // o must be nonzero

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r; mpq_add(r.v_, a.v_, b.v_); return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r; mpq_sub(r.v_, a.v_, b.v_); return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r; mpq_mul(r.v_, a.v_, b.v_); return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) {
    Rational r; mpq_neg(r.v_, a.v_); return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_, b.v_) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend Rational abs(const Rational& a) {
    Rational r; mpq_abs(r.v_, a.v_); return r;
  }

  Rational inverse() const;  // *this must be nonzero

  // Integer power with non-negative exponent (numerator and denominator
  // are powered separately; canonical form is preserved).
  friend Rational pow(const Rational& base, unsigned long e);

  // "num/den", or just "num" when den == 1.
  std::string str() const;

  // Truncated scientific rendering with `significant` digits, e.g.
  // "2.17692e-7". Truncation (not rounding) so the output literally begins
  // the decimal expansion. Non-normative; the rational is the value of record.
  std::string decimal(int significant) const;

  double to_double() const { return mpq_get_d(v_); }

  // Decimal digit counts of numerator and denominator (diagnostics).
  std::size_t num_digits() const { return mpz_sizeinbase(mpq_numref(v_), 10); }
  std::size_t den_digits() const { return mpz_sizeinbase(mpq_denref(v_), 10); }

  const __mpq_struct* raw() const { return v_; }
  __mpq_struct* raw() { return v_; }

 private:
  mpq_t v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Exact sum by balanced pairwise reduction. The value (canonical form) is
// independent of the reduction shape; the tree keeps intermediate
// denominators from growing quadratically when terms are pairwise coprime.
Rational tree_sum(std::span<Rational> terms);

// powers[k] = base^k for k = 0..max_exp.
std::vector<Rational> power_table(const Rational& base, long max_exp);

// Best rational approximation to x with denominator <= max_den (>= 1),
// by continued fractions with the final semiconvergent considered; exact
// comparisons, ties resolved toward the smaller denominator. Exact inputs
// with small enough denominator are returned unchanged.
Rational approximate_with_denominator(const Rational& x, unsigned long long max_den);

// Smallest rational of the form d / 10^k with at most `significant` digits
// in d that is >= x (x > 0). Upper bounds stay upper bounds but compact.
Rational round_up_decimal(const Rational& x, int significant);

}  // namespace wavecert
