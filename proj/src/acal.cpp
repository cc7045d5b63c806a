#include "wavecert/acal.hpp"

#include <Eigen/LU>

namespace wavecert {

RationalMatrix assemble_atilde(const SquareGrid& u0sq, const Frequency& freq, long mu) {
  if (mu < 1) throw std::invalid_argument("assemble_atilde: mu >= 1 required");
  const long dim = mu * mu;
  RationalMatrix at = RationalMatrix::Constant(dim, dim, Rational(0));
  const Rational three(3);
  for (long J = 0; J < dim; ++J) {
    const auto [mJ, nJ] = j_inverse(J);
    const Rational lc = three * linv_coeff(freq, mJ, nJ);
    for (long K = 0; K < dim; ++K) {
      const auto [mK, nK] = j_inverse(K);
      Rational e = lc * mult_basis_coeff(u0sq, mK, nK, mJ, nJ);
      if (J == K) e += Rational(1);
      at(J, K) = std::move(e);
    }
  }
  return at;
}

RationalMatrix assemble_atilde(const CoeffGrid& u0, const Frequency& freq, long mu) {
  return assemble_atilde(square(u0), freq, mu);
}

AcalMatrix invert_and_rationalize(const RationalMatrix& atilde, const PrecisionPolicy& policy) {
  policy.validate();
  if (atilde.rows() != atilde.cols())
    throw std::invalid_argument("invert_and_rationalize: square matrix required");
  const long dim = atilde.rows();
  const int bits = BigFloat::bits_for_digits(policy.digits);

  FloatMatrix a(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) a(i, j) = BigFloat::from_rational(atilde(i, j), bits);

  Eigen::FullPivLU<FloatMatrix> lu(a);
  const BigFloat pivot_floor = BigFloat::decimal_power(-(policy.digits / 2), bits);
  for (long k = 0; k < dim; ++k) {
    if (!(abs(lu.matrixLU()(k, k)) > pivot_floor)) throw InversionError(k);
  }
  const FloatMatrix inv = lu.inverse();

  const BigFloat zero_floor = BigFloat::decimal_power(8 - policy.digits, bits);
  AcalMatrix out;
  out.m = RationalMatrix::Constant(dim, dim, Rational(0));
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      const BigFloat& x = inv(i, j);
      if (!(abs(x) > zero_floor)) continue;  // noise denominators avoided
      out.m(i, j) = approximate_with_denominator(x.exact_rational(), policy.max_denominator);
    }
  return out;
}

Rational residual_norm(const AcalMatrix& acal, const RationalMatrix& atilde,
                       const NormWeights& w) {
  if (acal.dim() != atilde.rows() || atilde.rows() != atilde.cols())
    throw std::invalid_argument("residual_norm: dimension mismatch");
  const long dim = acal.dim();
  RationalMatrix r = acal.m * atilde;  // exact
  for (long i = 0; i < dim; ++i) r(i, i) -= Rational(1);
  const long mu = acal.mu();
  const auto pt = power_table(w.rho_tau, 2 * mu - 1);
  const auto px = power_table(w.rho_x, 2 * mu - 1);
  auto rho = [&](long J) {
    const auto [m, n] = j_inverse(J);
    return pt[2 * m + 1] * px[2 * n + 1];
  };
  Rational best(0);
  for (long K = 0; K < dim; ++K) {
    std::vector<Rational> terms;
    for (long J = 0; J < dim; ++J)
      if (!r(J, K).is_zero()) terms.push_back(rho(J) * abs(r(J, K)));
    const Rational col = tree_sum(terms) / rho(K);
    if (col > best) best = col;
  }
  return best;
}

}  // namespace wavecert
