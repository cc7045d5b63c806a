#include "wavecert/galerkin.hpp"

#include <Eigen/LU>

namespace wavecert {

namespace {

BigFloat lambda_coeff(const BigFloat& omega, long m, long n) {
  const BigFloat t(2 * n + 1), s(2 * m + 1);
  return t * t - omega * omega * s * s;
}

}  // namespace

FloatGrid galerkin_residual(const FloatGrid& v, const BigFloat& omega) {
  const long M = v.modes_m(), N = v.modes_n();
  const FloatGrid f = cube(v);
  auto r = FloatGrid::zeros(M, N);
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n)
      r.c(m, n) = lambda_coeff(omega, m, n) * v.c(m, n) + f.c(m, n);
  return r;
}

FloatMatrix galerkin_jacobian(const FloatGrid& v, const BigFloat& omega) {
  const long M = v.modes_m(), N = v.modes_n();
  const EvenGrid<BigFloat> d = square(v);
  FloatMatrix J(M * N, M * N);
  const BigFloat three(3);
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n) {
      const long row = m * N + n;
      for (long mp = 0; mp < M; ++mp)
        for (long np = 0; np < N; ++np) {
          BigFloat e = three * mult_basis_coeff(d, mp, np, m, n);
          if (mp == m && np == n) e += lambda_coeff(omega, m, n);
          J(row, mp * N + np) = std::move(e);
        }
    }
  return J;
}

BranchPoint newton_solve(const FloatGrid& initial, const Rational& omega,
                         const NewtonOptions& opt) {
  const int bits = BigFloat::bits_for_digits(opt.digits);
  const BigFloat omega_f = BigFloat::from_rational(omega, bits);
  const BigFloat tol = BigFloat::from_rational(opt.tol, bits);
  const long M = initial.modes_m(), N = initial.modes_n();

  FloatGrid v = FloatGrid::zeros(M, N);
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n)
      v.c(m, n) = BigFloat::from_rational(initial.c(m, n).exact_rational(), bits);

  BigFloat rmax(0);
  for (int it = 0; it < opt.max_iter; ++it) {
    const FloatGrid r = galerkin_residual(v, omega_f);
    rmax = BigFloat(0);
    for (long m = 0; m < M; ++m)
      for (long n = 0; n < N; ++n)
        if (abs(r.c(m, n)) > rmax) rmax = abs(r.c(m, n));
    if (rmax < tol) {
      BranchPoint b{omega, v, float_weighted_norm(v, NormWeights::defaults(), opt.digits), rmax};
      return b;
    }
    const FloatMatrix J = galerkin_jacobian(v, omega_f);
    Eigen::FullPivLU<FloatMatrix> lu(J);
    const BigFloat pivot_floor = BigFloat::decimal_power(-(opt.digits / 2), bits);
    for (long k = 0; k < J.rows(); ++k)
      if (!(abs(lu.matrixLU()(k, k)) > pivot_floor)) throw SingularJacobian(k);
    FloatVector rhs(M * N);
    for (long m = 0; m < M; ++m)
      for (long n = 0; n < N; ++n) rhs(m * N + n) = r.c(m, n);
    const FloatVector dx = lu.solve(rhs);
    for (long m = 0; m < M; ++m)
      for (long n = 0; n < N; ++n) v.c(m, n) -= dx(m * N + n);
  }
  throw NewtonDivergence(rmax.to_double(), opt.max_iter);
}

CoeffGrid rationalize_candidate(const BranchPoint& b, unsigned long long max_denominator) {
  const auto& s = b.solution;
  auto out = CoeffGrid::zeros(s.modes_m(), s.modes_n());
  for (long m = 0; m < s.modes_m(); ++m)
    for (long n = 0; n < s.modes_n(); ++n) {
      if (s.c(m, n).is_zero()) continue;
      out.c(m, n) = approximate_with_denominator(s.c(m, n).exact_rational(), max_denominator);
    }
  return out;
}

std::vector<SeedFamily> default_seed_families(long M, long N) {
  std::vector<SeedFamily> fams;
  const char* names[] = {"trunk", "scaled3", "scaled5"};
  for (long k = 0; k < 3; ++k)
    if (k < M && k < N) fams.push_back({names[k], k});
  return fams;
}

FloatGrid family_seed(const SeedFamily& fam, const Rational& omega, long M, long N, int digits) {
  if (fam.k >= M || fam.k >= N)
    throw std::invalid_argument("family_seed: mode (k,k) outside the truncation");
  const int bits = BigFloat::bits_for_digits(digits);
  const BigFloat om = BigFloat::from_rational(omega, bits);
  const BigFloat one(1);
  const BigFloat c2 = (om * om - one) * BigFloat(16) / BigFloat(9);
  if (!(c2 > BigFloat(0))) throw std::invalid_argument("family_seed: requires Omega > 1");
  const BigFloat c = sqrt(c2);
  auto g = FloatGrid::zeros(M, N);
  g.c(fam.k, fam.k) = BigFloat(2 * fam.k + 1) * c;
  return g;
}

SweepResult sweep(const Rational& omega_lo, const Rational& omega_hi, long steps, long trunc,
                  const std::vector<SeedFamily>& seeds, const NewtonOptions& opt) {
  if (!(omega_lo < omega_hi)) throw std::invalid_argument("sweep: omega_lo < omega_hi required");
  if (steps < 1) throw std::invalid_argument("sweep: steps >= 1 required");
  SweepResult out;
  const Rational step = (omega_hi - omega_lo) / Rational(steps);
  std::vector<std::optional<FloatGrid>> warm(seeds.size());
  for (long i = 0; i <= steps; ++i) {
    const Rational omega = omega_lo + Rational(i) * step;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      FloatGrid start = warm[s] ? *warm[s] : family_seed(seeds[s], omega, trunc, trunc, opt.digits);
      try {
        BranchPoint b = newton_solve(start, omega, opt);
        warm[s] = b.solution;
        out.points.push_back({seeds[s].id, std::move(b)});
      } catch (const std::runtime_error& e) {
        warm[s].reset();  // branch may fold; reseed the family at the next step
        out.gaps.push_back({seeds[s].id, omega, e.what()});
      }
    }
  }
  return out;
}

bool equal_up_to_sign(const FloatGrid& a, const FloatGrid& b, const BigFloat& tol) {
  if (a.modes_m() != b.modes_m() || a.modes_n() != b.modes_n()) return false;
  BigFloat dmax(0), smax(0);
  for (long m = 0; m < a.modes_m(); ++m)
    for (long n = 0; n < a.modes_n(); ++n) {
      const BigFloat d = abs(a.c(m, n) - b.c(m, n));
      const BigFloat s = abs(a.c(m, n) + b.c(m, n));
      if (d > dmax) dmax = d;
      if (s > smax) smax = s;
    }
  return dmax < tol || smax < tol;
}

BigFloat float_weighted_norm(const FloatGrid& v, const NormWeights& w, int digits) {
  const int bits = BigFloat::bits_for_digits(digits);
  const BigFloat rt = BigFloat::from_rational(w.rho_tau, bits);
  const BigFloat rx = BigFloat::from_rational(w.rho_x, bits);
  BigFloat sum(0);
  for (long m = 0; m < v.modes_m(); ++m) {
    for (long n = 0; n < v.modes_n(); ++n) {
      if (v.c(m, n).is_zero()) continue;
      BigFloat p(1);
      for (long k = 0; k < 2 * m + 1; ++k) p *= rt;
      for (long k = 0; k < 2 * n + 1; ++k) p *= rx;
      sum += p * abs(v.c(m, n));
    }
  }
  return sum;
}

}  // namespace wavecert
