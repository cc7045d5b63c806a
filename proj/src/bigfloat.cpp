#include "wavecert/bigfloat.hpp"

#include <stdexcept>
#include <vector>

namespace wavecert {

Rational BigFloat::exact_rational() const {
  if (mpfr_nan_p(v_) || mpfr_inf_p(v_))
    throw std::domain_error("BigFloat: non-finite value has no rational form");
  Rational r;
  if (is_zero()) return r;
  mpz_t m;
  mpz_init(m);
  const mpfr_exp_t e = mpfr_get_z_2exp(m, v_);  // value = m * 2^e exactly
  mpq_set_z(r.raw(), m);
  mpz_clear(m);
  mpz_t two;
  mpz_init_set_ui(two, 2);
  if (e >= 0) {
    mpz_t p;
    mpz_init(p);
    mpz_pow_ui(p, two, static_cast<unsigned long>(e));
    mpz_mul(mpq_numref(r.raw()), mpq_numref(r.raw()), p);
    mpz_clear(p);
  } else {
    mpz_t p;
    mpz_init(p);
    mpz_pow_ui(p, two, static_cast<unsigned long>(-e));
    mpz_set(mpq_denref(r.raw()), p);
    mpz_clear(p);
  }
  mpz_clear(two);
  mpq_canonicalize(r.raw());
  return r;
}

std::string BigFloat::str(int significant) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t e = 0;
  std::vector<char> buf(static_cast<std::size_t>(significant) + 8);
  mpfr_get_str(buf.data(), &e, 10, static_cast<std::size_t>(significant), v_, MPFR_RNDN);
  std::string digits(buf.data());
  std::string sgn;
  if (!digits.empty() && digits[0] == '-') {
    sgn = "-";
    digits.erase(0, 1);
  }
  // mpfr convention: value = 0.digits * 10^e
  std::string out = sgn + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

}  // namespace wavecert
