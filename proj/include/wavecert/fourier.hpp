// =============================================================================
// fourier.hpp
//
// Exact Fourier algebra over the odd basis
//     P_{m,n}(tau, x) = cos((2m+1) tau) * sin((2n+1) x),
// the natural home of time-periodic Dirichlet solutions, together with the
// even basis cos(2m tau) cos(2n x) in which squares of odd-basis series live.
//
// Contents:
//   - OddGrid / EvenGrid: strong-typed coefficient grids (scalar-templated so
//     the exact rational path and the controlled-precision floating path
//     share one set of convolution kernels).
//   - reflect_index: negative-index reflection identities
//         P_{-m,n} = P_{m-1,n},  P_{m,-n} = -P_{m,n-1}.
//   - j_index / j_inverse: the square-spiral bijection N x N <-> N used to
//     address block matrices.
//   - weighted_norm: || v || = sum rho_tau^{2m+1} rho_x^{2n+1} |c_{m,n}|.
//   - square / cube / mult_by_basis: the three discrete convolutions
//     (d, f and g coefficient families) for u^2, u^3 and u^2 * P_{m,n}.
//
// Convolution indices that fall outside a grid contribute zero; this is the
// source convention for d and is applied uniformly to f and g.
// =============================================================================
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "wavecert/eigen_support.hpp"

namespace wavecert {

// --- grids -------------------------------------------------------------------

// v = sum_{0<=m<M, 0<=n<N} c(m,n) P_{m,n}
template <class Scalar>
struct OddGrid {
  DenseMatrix<Scalar> c;

  OddGrid() = default;
  explicit OddGrid(DenseMatrix<Scalar> coeffs) : c(std::move(coeffs)) {}
  static OddGrid zeros(Eigen::Index m, Eigen::Index n) {
    OddGrid g;
    g.c = DenseMatrix<Scalar>::Constant(m, n, Scalar(0));
    return g;
  }
  Eigen::Index modes_m() const { return c.rows(); }  // M
  Eigen::Index modes_n() const { return c.cols(); }  // N
  bool is_zero() const {
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j)
        if (!(c(i, j) == Scalar(0))) return false;
    return true;
  }
};

// w = sum_{0<=m<rows, 0<=n<cols} d(m,n) cos(2m tau) cos(2n x)
template <class Scalar>
struct EvenGrid {
  DenseMatrix<Scalar> d;

  EvenGrid() = default;
  explicit EvenGrid(DenseMatrix<Scalar> coeffs) : d(std::move(coeffs)) {}
  static EvenGrid zeros(Eigen::Index m, Eigen::Index n) {
    EvenGrid g;
    g.d = DenseMatrix<Scalar>::Constant(m, n, Scalar(0));
    return g;
  }
};

using CoeffGrid = OddGrid<Rational>;
using SquareGrid = EvenGrid<Rational>;
using FloatGrid = OddGrid<BigFloat>;

// --- weights and frequency ----------------------------------------------------

struct NormWeights {
  Rational rho_tau;
  Rational rho_x;

  NormWeights(Rational rt, Rational rx) : rho_tau(std::move(rt)), rho_x(std::move(rx)) {
    if (!(rho_tau > Rational(1)) || !(rho_x > Rational(1)))
      throw std::invalid_argument("NormWeights: weights must be > 1");
  }
  NormWeights() : NormWeights(defaults()) {}
  // rho_tau = rho_x = (10^20 + 1) / 10^20, stored exactly.
  static NormWeights defaults();
};

// Omega = (2p+1) / (2q) with p > q >= 1, so Omega > 1 and every
// (2n+1)^2 - Omega^2 (2m+1)^2 is a nonzero rational (odd/even mismatch).
struct Frequency {
  long p = 2;
  long q = 1;

  Frequency() = default;  // placeholder 5/2; real values come from (p, q) or text
  Frequency(long p_, long q_) : p(p_), q(q_) {
    if (q < 1 || p <= q) throw std::invalid_argument("Frequency: need p > q >= 1");
  }
  Rational omega() const { return Rational(2 * p + 1, 2 * q); }
  // Parse "num/den" with num = 2p+1 odd, den = 2q even.
  static Frequency from_rational_text(const std::string& text);
};

// --- index maps ----------------------------------------------------------------

struct ReflectedIndex {
  long m = 0;
  long n = 0;
  int sign = 1;
};

// P_{m,n} for any signed pair equals sign * P_{m',n'} with m', n' >= 0.
inline ReflectedIndex reflect_index(long m, long n) {
  ReflectedIndex r;
  r.m = m < 0 ? -m - 1 : m;
  r.n = n;
  if (n < 0) {
    r.n = -n - 1;
    r.sign = -1;
  }
  return r;
}

// J(m,n) = max(m,n)^2 + max(m,n) - m + n
inline long j_index(long m, long n) {
  const long mx = m > n ? m : n;
  return mx * mx + mx - m + n;
}

std::pair<long, long> j_inverse(long J);

// --- norm ----------------------------------------------------------------------

Rational weighted_norm(const CoeffGrid& v, const NormWeights& w);

// --- convolutions ---------------------------------------------------------------

namespace detail {
template <class Scalar>
const Scalar& grid_or_zero(const DenseMatrix<Scalar>& g, long i, long j) {
  static const Scalar kZero(0);
  if (i < 0 || j < 0 || i >= g.rows() || j >= g.cols()) return kZero;
  return g(i, j);
}
}  // namespace detail

// u^2 in the even basis: 2M x 2N grid of d coefficients.
template <class Scalar>
EvenGrid<Scalar> square(const OddGrid<Scalar>& u) {
  const long M = u.modes_m(), N = u.modes_n();
  const auto& c = u.c;
  auto out = EvenGrid<Scalar>::zeros(2 * M, 2 * N);
  for (long m = 0; m < 2 * M; ++m) {
    for (long n = 0; n < 2 * N; ++n) {
      Scalar tot(0);
      // spatial inner sums shared by the three temporal pairings
      auto spatial = [&](long ma, long mb) {
        Scalar s(0);
        for (long n1 = 0; n1 + n < N; ++n1) s += c(ma, n + n1) * c(mb, n1);
        for (long n1 = n; n1 < N; ++n1) s += c(ma, n1 - n) * c(mb, n1);
        const long lo = n - N > 0 ? n - N : 0;
        const long hi = (n - 1 < N - 1 ? n - 1 : N - 1);
        for (long n1 = lo; n1 <= hi; ++n1) s -= c(ma, n - n1 - 1) * c(mb, n1);
        return s;
      };
      {  // temporal sum pairing: m1 + m2 + 1 = m
        const long lo = m - M > 0 ? m - M : 0;
        const long hi = (m - 1 < M - 1 ? m - 1 : M - 1);
        for (long m1 = lo; m1 <= hi; ++m1) tot += spatial(m - m1 - 1, m1);
      }
      for (long m1 = m; m1 < M; ++m1) tot += spatial(m1 - m, m1);   // m1 - m2 = m
      for (long m1 = 0; m1 + m < M; ++m1) tot += spatial(m + m1, m1);  // m2 - m1 = m
      const long du = (m == 0 ? 2 : 1) * (n == 0 ? 2 : 1) * 4;
      out.d(m, n) = tot / Scalar(du);
    }
  }
  return out;
}

// u^3 in the odd basis, via convolution of u^2 with u: (3M-1) x (3N-1).
template <class Scalar>
OddGrid<Scalar> cube(const OddGrid<Scalar>& u, const EvenGrid<Scalar>& usq) {
  const long M = u.modes_m(), N = u.modes_n();
  const auto& c = u.c;
  const auto& d = usq.d;
  auto out = OddGrid<Scalar>::zeros(3 * M - 1, 3 * N - 1);
  auto dz = [&](long i, long j) -> const Scalar& { return detail::grid_or_zero(d, i, j); };
  for (long m = 0; m < 3 * M - 1; ++m) {
    for (long n = 0; n < 3 * N - 1; ++n) {
      Scalar tot(0);
      auto spatial = [&](long a, long m1) {
        Scalar s(0);
        const long lo = n - 2 * N + 1 > 0 ? n - 2 * N + 1 : 0;
        const long hi = (N - 1 < n ? N - 1 : n);
        for (long n1 = lo; n1 <= hi; ++n1) s += dz(a, n - n1) * c(m1, n1);
        for (long n1 = n; n1 < N; ++n1) s += dz(a, n1 - n) * c(m1, n1);
        const long hi3 = (N - 1 < 2 * N - 2 - n ? N - 1 : 2 * N - 2 - n);
        for (long n1 = 0; n1 <= hi3; ++n1) s -= dz(a, n + n1 + 1) * c(m1, n1);
        return s;
      };
      {
        const long lo = m - 2 * M + 1 > 0 ? m - 2 * M + 1 : 0;
        const long hi = (M - 1 < m ? M - 1 : m);
        for (long m1 = lo; m1 <= hi; ++m1) tot += spatial(m - m1, m1);
      }
      for (long m1 = m; m1 < M; ++m1) tot += spatial(m1 - m, m1);
      {
        const long hi = (M - 1 < 2 * M - 2 - m ? M - 1 : 2 * M - 2 - m);
        for (long m1 = 0; m1 <= hi; ++m1) tot += spatial(m + m1 + 1, m1);
      }
      out.c(m, n) = tot / Scalar(4);
    }
  }
  return out;
}

template <class Scalar>
OddGrid<Scalar> cube(const OddGrid<Scalar>& u) {
  return cube(u, square(u));
}

// Single coefficient g^{m,n}_{m2,n2} of u^2 * P_{m,n} from the d grid of u^2
// (dimensions 2M x 2N). Nine-point stencil with the zero-outside convention.
template <class Scalar>
Scalar mult_basis_coeff(const EvenGrid<Scalar>& usq, long m, long n, long m2, long n2) {
  const auto& d = usq.d;
  auto dz = [&](long i, long j) -> const Scalar& { return detail::grid_or_zero(d, i, j); };
  Scalar tot(0);
  const long as[3] = {m - m2, m2 - m, m + m2 + 1};
  for (const long a : as) tot += dz(a, n - n2) + dz(a, n2 - n) - dz(a, n + n2 + 1);
  return tot / Scalar(4);
}

// u^2 * P_{m,n} in the odd basis: (2M+m) x (2N+n) grid of g coefficients.
template <class Scalar>
OddGrid<Scalar> mult_by_basis(const EvenGrid<Scalar>& usq, long m, long n) {
  if (usq.d.rows() % 2 != 0 || usq.d.cols() % 2 != 0)
    throw std::invalid_argument("mult_by_basis: even grid must be 2M x 2N");
  const long M = usq.d.rows() / 2, N = usq.d.cols() / 2;
  auto out = OddGrid<Scalar>::zeros(2 * M + m, 2 * N + n);
  for (long m2 = 0; m2 < 2 * M + m; ++m2)
    for (long n2 = 0; n2 < 2 * N + n; ++n2)
      out.c(m2, n2) = mult_basis_coeff(usq, m, n, m2, n2);
  return out;
}

// Zero-pad v to at least (rows, cols).
template <class Scalar>
OddGrid<Scalar> padded(const OddGrid<Scalar>& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.modes_m() >= rows && v.modes_n() >= cols) return v;
  auto out = OddGrid<Scalar>::zeros(rows > v.modes_m() ? rows : v.modes_m(),
                                    cols > v.modes_n() ? cols : v.modes_n());
  for (Eigen::Index i = 0; i < v.modes_m(); ++i)
    for (Eigen::Index j = 0; j < v.modes_n(); ++j) out.c(i, j) = v.c(i, j);
  return out;
}

template <class Scalar>
OddGrid<Scalar> grid_sum(const OddGrid<Scalar>& a, const OddGrid<Scalar>& b) {
  auto out = padded(a, b.modes_m(), b.modes_n());
  for (Eigen::Index i = 0; i < b.modes_m(); ++i)
    for (Eigen::Index j = 0; j < b.modes_n(); ++j) out.c(i, j) += b.c(i, j);
  return out;
}

template <class Scalar>
OddGrid<Scalar> grid_diff(const OddGrid<Scalar>& a, const OddGrid<Scalar>& b) {
  auto out = padded(a, b.modes_m(), b.modes_n());
  for (Eigen::Index i = 0; i < b.modes_m(); ++i)
    for (Eigen::Index j = 0; j < b.modes_n(); ++j) out.c(i, j) -= b.c(i, j);
  return out;
}

}  // namespace wavecert
