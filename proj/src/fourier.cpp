#include "wavecert/fourier.hpp"

#include <cmath>

namespace wavecert {

NormWeights NormWeights::defaults() {
  const Rational e20 = Rational::decimal_power(20);
  const Rational rho = (e20 + Rational(1)) / e20;
  return NormWeights(rho, rho);
}

Frequency Frequency::from_rational_text(const std::string& text) {
  const auto r = Rational::parse(text);
  if (!r) throw std::invalid_argument("Frequency: cannot parse '" + text + "'");
  // Omega = num/den in lowest terms must be (2p+1)/(2q).
  mpz_t num, den;
  mpz_init(num);
  mpz_init(den);
  mpz_set(num, mpq_numref(r->raw()));
  mpz_set(den, mpq_denref(r->raw()));
  const bool ok = mpz_sgn(num) > 0 && mpz_odd_p(num) && mpz_even_p(den) &&
                  mpz_fits_slong_p(num) && mpz_fits_slong_p(den);
  long p = 0, q = 0;
  if (ok) {
    p = (mpz_get_si(num) - 1) / 2;
    q = mpz_get_si(den) / 2;
  }
  mpz_clear(num);
  mpz_clear(den);
  if (!ok || q < 1 || p <= q)
    throw std::invalid_argument("Frequency: '" + text +
                                "' is not of the form (2p+1)/(2q) with p > q >= 1");
  return Frequency(p, q);
}

std::pair<long, long> j_inverse(long J) {
  if (J < 0) throw std::invalid_argument("j_inverse: negative index");
  long r = static_cast<long>(std::sqrt(static_cast<double>(J)));
  while (r * r > J) --r;
  while ((r + 1) * (r + 1) <= J) ++r;  // r = floor(sqrt(J))
  const long ce = (r * r == J) ? r : r + 1;
  if (J - r * r <= ce * ce - J) return {r, J - r * r};
  return {ce * ce - J - 1, r};
}

Rational weighted_norm(const CoeffGrid& v, const NormWeights& w) {
  const long M = v.modes_m(), N = v.modes_n();
  const auto pt = power_table(w.rho_tau, 2 * M - 1);
  const auto px = power_table(w.rho_x, 2 * N - 1);
  std::vector<Rational> terms;
  terms.reserve(static_cast<std::size_t>(M) * static_cast<std::size_t>(N));
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n) {
      if (v.c(m, n).is_zero()) continue;
      terms.push_back(pt[2 * m + 1] * px[2 * n + 1] * abs(v.c(m, n)));
    }
  return tree_sum(terms);
}

}  // namespace wavecert
