#include "wavecert/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace wavecert {

Rational::Rational(long num, long den) : Rational() {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) { num = -num; den = -den; }
  mpq_set_si(v_, num, static_cast<unsigned long>(den));
  mpq_canonicalize(v_);
}

Rational Rational::decimal_power(long k) {
  Rational r{1};
  mpz_t t;
  mpz_init(t);
  mpz_ui_pow_ui(t, 10u, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0)
    mpq_set_z(r.v_, t);
  else {
    mpq_set_ui(r.v_, 1u, 1u);
    mpz_set(mpq_denref(r.v_), t);
  }
  mpz_clear(t);
  return r;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto is_int = [](std::string_view s, bool sign_ok) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (sign_ok && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string nums, dens = "1";
  if (slash == std::string_view::npos) {
    if (!is_int(text, true)) return std::nullopt;
    nums = std::string(text);
  } else {
    auto n = text.substr(0, slash), d = text.substr(slash + 1);
    if (!is_int(n, true) || !is_int(d, false)) return std::nullopt;
    nums = std::string(n);
    dens = std::string(d);
  }
  if (!nums.empty() && nums[0] == '+') nums.erase(0, 1);  // mpz_set_str rejects '+'
  Rational r;
  if (mpz_set_str(mpq_numref(r.v_), nums.c_str(), 10) != 0) return std::nullopt;
  if (mpz_set_str(mpq_denref(r.v_), dens.c_str(), 10) != 0) return std::nullopt;
  if (mpz_sgn(mpq_denref(r.v_)) == 0) return std::nullopt;
  mpq_canonicalize(r.v_);
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(v_, v_, o.v_);
  return *this;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  Rational r;
  mpq_div(r.v_, a.v_, b.v_);
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  Rational r;
  mpq_inv(r.v_, v_);
  return r;
}

Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.v_), mpq_numref(base.v_), e);
  mpz_pow_ui(mpq_denref(r.v_), mpq_denref(base.v_), e);
  return r;  // gcd(num,den)=1 is preserved under powering
}

std::string Rational::str() const {
  char* s = mpq_get_str(nullptr, 10, v_);
  std::string out(s);
  void (*freefn)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(s, out.size() + 1);
  return out;
}

std::string Rational::decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";
  mpz_t num, den, digs, scaled;
  mpz_inits(num, den, digs, scaled, nullptr);
  mpz_abs(num, mpq_numref(v_));
  mpz_set(den, mpq_denref(v_));

  // exponent e: 10^e <= |x| < 10^{e+1}
  long e = static_cast<long>(mpz_sizeinbase(num, 10)) -
           static_cast<long>(mpz_sizeinbase(den, 10));  // within +-1
  auto cmp_pow = [&](long k) {
    // sign of |x| - 10^k
    mpz_t lhs, rhs;
    mpz_inits(lhs, rhs, nullptr);
    if (k >= 0) {
      mpz_ui_pow_ui(rhs, 10u, static_cast<unsigned long>(k));
      mpz_mul(rhs, rhs, den);
      mpz_set(lhs, num);
    } else {
      mpz_ui_pow_ui(lhs, 10u, static_cast<unsigned long>(-k));
      mpz_mul(lhs, lhs, num);
      mpz_set(rhs, den);
    }
    const int c = mpz_cmp(lhs, rhs);
    mpz_clears(lhs, rhs, nullptr);
    return c;
  };
  while (cmp_pow(e) < 0) --e;
  while (cmp_pow(e + 1) >= 0) ++e;

  // digits = floor(|x| * 10^{significant-1-e}), exactly `significant` digits
  const long shift = significant - 1 - e;
  mpz_set(scaled, num);
  mpz_t p;
  mpz_init(p);
  if (shift >= 0) {
    mpz_ui_pow_ui(p, 10u, static_cast<unsigned long>(shift));
    mpz_mul(scaled, scaled, p);
    mpz_fdiv_q(digs, scaled, den);
  } else {
    mpz_ui_pow_ui(p, 10u, static_cast<unsigned long>(-shift));
    mpz_mul(p, p, den);
    mpz_fdiv_q(digs, scaled, p);
  }
  char* ds = mpz_get_str(nullptr, 10, digs);
  std::string digits(ds);
  void (*freefn)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(ds, digits.size() + 1);
  mpz_clears(num, den, digs, scaled, p, nullptr);

  std::string out;
  if (sign() < 0) out += '-';
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(e);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational tree_sum(std::span<Rational> terms) {
  if (terms.empty()) return Rational{0};
  std::size_t n = terms.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (n % 2 == 1) terms[half] = std::move(terms[n - 1]);
    n = half + n % 2;
  }
  return terms[0];
}

std::vector<Rational> power_table(const Rational& base, long max_exp) {
  std::vector<Rational> t;
  t.reserve(static_cast<std::size_t>(max_exp) + 1);
  t.emplace_back(1);
  for (long k = 1; k <= max_exp; ++k) t.push_back(t.back() * base);
  return t;
}

Rational round_up_decimal(const Rational& x, int significant) {
  if (!(x.sign() > 0)) throw std::invalid_argument("round_up_decimal: x > 0 required");
  if (significant < 1) significant = 1;
  // exponent e with 10^e <= x < 10^{e+1}, reusing the digit-count bracket
  mpz_t num, den;
  mpz_inits(num, den, nullptr);
  mpz_set(num, mpq_numref(x.raw()));
  mpz_set(den, mpq_denref(x.raw()));
  long e = static_cast<long>(mpz_sizeinbase(num, 10)) -
           static_cast<long>(mpz_sizeinbase(den, 10));
  auto cmp_pow = [&](long k) {
    mpz_t lhs, rhs;
    mpz_inits(lhs, rhs, nullptr);
    if (k >= 0) {
      mpz_ui_pow_ui(rhs, 10u, static_cast<unsigned long>(k));
      mpz_mul(rhs, rhs, den);
      mpz_set(lhs, num);
    } else {
      mpz_ui_pow_ui(lhs, 10u, static_cast<unsigned long>(-k));
      mpz_mul(lhs, lhs, num);
      mpz_set(rhs, den);
    }
    const int c = mpz_cmp(lhs, rhs);
    mpz_clears(lhs, rhs, nullptr);
    return c;
  };
  while (cmp_pow(e) < 0) --e;
  while (cmp_pow(e + 1) >= 0) ++e;
  // d = ceil(x * 10^{significant-1-e}), result d / 10^{significant-1-e}
  const long shift = significant - 1 - e;
  mpz_t d, p;
  mpz_inits(d, p, nullptr);
  if (shift >= 0) {
    mpz_ui_pow_ui(p, 10u, static_cast<unsigned long>(shift));
    mpz_mul(d, num, p);
    mpz_cdiv_q(d, d, den);
  } else {
    mpz_ui_pow_ui(p, 10u, static_cast<unsigned long>(-shift));
    mpz_mul(p, p, den);
    mpz_cdiv_q(d, num, p);
  }
  Rational out;
  mpz_set(mpq_numref(out.raw()), d);
  mpz_clears(num, den, d, p, nullptr);
  const Rational scale = Rational::decimal_power(-shift);
  out = out * scale;
  return out;
}

Rational approximate_with_denominator(const Rational& x, unsigned long long max_den) {
  if (max_den < 1) throw std::invalid_argument("approximate_with_denominator: cap < 1");
  mpz_t cap;
  mpz_init(cap);
  static_assert(sizeof(unsigned long) == sizeof(unsigned long long));
  mpz_set_ui(cap, static_cast<unsigned long>(max_den));
  if (mpz_cmp(mpq_denref(x.raw()), cap) <= 0) {
    mpz_clear(cap);
    return x;  // already representable
  }
  const bool neg = x.sign() < 0;
  Rational ax = abs(x);

  // Continued-fraction walk on |x| = num/den.
  mpz_t num, den, a, rem, p0, q0, p1, q1, pn, qn, t;
  mpz_inits(num, den, a, rem, p0, q0, p1, q1, pn, qn, t, nullptr);
  mpz_set(num, mpq_numref(ax.raw()));
  mpz_set(den, mpq_denref(ax.raw()));
  mpz_set_ui(p0, 1); mpz_set_ui(q0, 0);  // h_{-1}/k_{-1}
  mpz_set_ui(p1, 0); mpz_set_ui(q1, 1);  // h_{-2}/k_{-2}... swapped below
  // Use (p1,q1) as previous convergent, (p0,q0) as the one before.
  // Initialize: before first step, previous = 1/0 is not a convergent; set
  // h_{-1}=1,k_{-1}=0 and h_{-2}=0,k_{-2}=1 in the standard recurrence.
  mpz_set_ui(p0, 0); mpz_set_ui(q0, 1);
  mpz_set_ui(p1, 1); mpz_set_ui(q1, 0);

  Rational last_conv{0};
  bool have_conv = false;
  while (mpz_sgn(den) != 0) {
    mpz_fdiv_qr(a, rem, num, den);
    // next convergent: pn = a*p1 + p0, qn = a*q1 + q0
    mpz_mul(pn, a, p1); mpz_add(pn, pn, p0);
    mpz_mul(qn, a, q1); mpz_add(qn, qn, q0);
    if (mpz_cmp(qn, cap) > 0) {
      // Largest semiconvergent still under the cap: t = (cap - q0) / q1.
      mpz_sub(t, cap, q0);
      mpz_fdiv_q(t, t, q1);
      Rational semi{0};
      bool have_semi = false;
      if (mpz_sgn(t) > 0) {
        mpz_mul(pn, t, p1); mpz_add(pn, pn, p0);
        mpz_mul(qn, t, q1); mpz_add(qn, qn, q0);
        mpz_set(mpq_numref(semi.raw()), pn);
        mpz_set(mpq_denref(semi.raw()), qn);
        mpq_canonicalize(semi.raw());
        have_semi = true;
      }
      Rational best = last_conv;
      if (have_semi) {
        if (!have_conv) {
          best = semi;
        } else {
          const Rational ec = abs(ax - last_conv), es = abs(ax - semi);
          if (es < ec) best = semi;
        }
      }
      mpz_clears(num, den, a, rem, p0, q0, p1, q1, pn, qn, t, cap, nullptr);
      return neg ? -best : best;
    }
    mpz_set(mpq_numref(last_conv.raw()), pn);
    mpz_set(mpq_denref(last_conv.raw()), qn);
    mpq_canonicalize(last_conv.raw());
    have_conv = true;
    mpz_set(p0, p1); mpz_set(q0, q1);
    mpz_set(p1, pn); mpz_set(q1, qn);
    mpz_set(num, den);
    mpz_set(den, rem);
  }
  // Terminated: |x| itself reached with q <= cap (handled above normally).
  mpz_clears(num, den, a, rem, p0, q0, p1, q1, pn, qn, t, cap, nullptr);
  return neg ? -last_conv : last_conv;
}

}  // namespace wavecert
