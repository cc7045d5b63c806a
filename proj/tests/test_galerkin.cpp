#include "doctest.h"
#include "test_support.hpp"
#include "wavecert/galerkin.hpp"
#include "wavecert/operators.hpp"

using namespace wavecert;
using testing::Rng;

namespace {
const Rational kOmega(69, 40);

FloatGrid to_float(const CoeffGrid& g, int digits) {
  const int bits = BigFloat::bits_for_digits(digits);
  auto out = FloatGrid::zeros(g.modes_m(), g.modes_n());
  for (long m = 0; m < g.modes_m(); ++m)
    for (long n = 0; n < g.modes_n(); ++n) out.c(m, n) = BigFloat::from_rational(g.c(m, n), bits);
  return out;
}
}  // namespace

TEST_CASE("galerkin_residual: zero is a solution") {
  const FloatGrid z = FloatGrid::zeros(3, 3);
  const FloatGrid r = galerkin_residual(z, BigFloat::from_rational(kOmega, 128));
  for (long m = 0; m < 3; ++m)
    for (long n = 0; n < 3; ++n) CHECK(r.c(m, n).is_zero());
}

TEST_CASE("scalar trunk root at M = N = 1") {
  // (1 - Omega^2) c + (9/16) c^3 = 0 -> c = sqrt((Omega^2-1) 16/9) = 1.874092...
  const FloatGrid seed = family_seed({"trunk", 0}, kOmega, 1, 1, 30);
  CHECK(seed.c(0, 0).to_double() == doctest::Approx(1.8740923729).epsilon(1e-9));

  auto start = FloatGrid::zeros(1, 1);
  start.c(0, 0) = BigFloat::from_double(2.0, BigFloat::bits_for_digits(30));
  const BranchPoint b = newton_solve(start, kOmega, NewtonOptions::certified());
  CHECK(b.solution.c(0, 0).to_double() == doctest::Approx(1.8740923729).epsilon(1e-9));
  CHECK(b.newton_residual < BigFloat::decimal_power(-25, 128));
  // residual property: converged point satisfies the system below tol
  const FloatGrid r = galerkin_residual(b.solution, BigFloat::from_rational(kOmega, 128));
  CHECK(abs(r.c(0, 0)) < BigFloat::decimal_power(-25, 128));
}

TEST_CASE("newton from zero converges to the trivial solution") {
  const FloatGrid z = FloatGrid::zeros(2, 2);
  const BranchPoint b = newton_solve(z, kOmega, NewtonOptions::certified());
  for (long m = 0; m < 2; ++m)
    for (long n = 0; n < 2; ++n) CHECK(b.solution.c(m, n).is_zero());
}

TEST_CASE("sign symmetry of the residual") {
  Rng rng(41);
  const int bits = BigFloat::bits_for_digits(30);
  const BigFloat om = BigFloat::from_rational(kOmega, bits);
  auto v = FloatGrid::zeros(3, 3);
  for (long m = 0; m < 3; ++m)
    for (long n = 0; n < 3; ++n)
      v.c(m, n) = BigFloat::from_double(static_cast<double>(rng.range(-8, 8)) / 7.0, bits);
  auto neg = FloatGrid::zeros(3, 3);
  for (long m = 0; m < 3; ++m)
    for (long n = 0; n < 3; ++n) neg.c(m, n) = -v.c(m, n);
  const FloatGrid r = galerkin_residual(v, om);
  const FloatGrid rn = galerkin_residual(neg, om);
  for (long m = 0; m < 3; ++m)
    for (long n = 0; n < 3; ++n) CHECK(rn.c(m, n) == -r.c(m, n));
}

TEST_CASE("assembled Jacobian matches finite differences") {
  Rng rng(42);
  const int digits = 30;
  const int bits = BigFloat::bits_for_digits(digits);
  const BigFloat om = BigFloat::from_rational(kOmega, bits);
  const long M = 2, N = 2;
  auto v = FloatGrid::zeros(M, N);
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n)
      v.c(m, n) = BigFloat::from_double(static_cast<double>(rng.range(-10, 10)) / 9.0, bits);
  const FloatMatrix J = galerkin_jacobian(v, om);
  const BigFloat h = BigFloat::decimal_power(-8, bits);
  // 10 random directions, coordinate-aligned
  for (int probe = 0; probe < 10; ++probe) {
    const long mi = rng.range(0, M - 1), ni = rng.range(0, N - 1);
    auto vp = v;
    vp.c(mi, ni) += h;
    const FloatGrid r0 = galerkin_residual(v, om);
    const FloatGrid r1 = galerkin_residual(vp, om);
    for (long m = 0; m < M; ++m)
      for (long n = 0; n < N; ++n) {
        const BigFloat fd = (r1.c(m, n) - r0.c(m, n)) / h;
        const BigFloat an = J(m * N + n, mi * N + ni);
        const BigFloat denom = abs(an) > BigFloat(1) ? abs(an) : BigFloat(1);
        CHECK(abs(fd - an) / denom < BigFloat::decimal_power(-6, bits));
      }
  }
}

TEST_CASE("floating cube agrees with the exact rational cube") {
  Rng rng(43);
  const int bits = BigFloat::bits_for_digits(30);
  for (int trial = 0; trial < 5; ++trial) {
    const CoeffGrid u = testing::random_grid(rng, 3, 3);
    const CoeffGrid fr = cube(u);
    const FloatGrid ff = cube(to_float(u, 30));
    for (long m = 0; m < fr.modes_m(); ++m)
      for (long n = 0; n < fr.modes_n(); ++n) {
        const BigFloat exact = BigFloat::from_rational(fr.c(m, n), bits);
        CHECK(abs(ff.c(m, n) - exact) < BigFloat::decimal_power(-24, bits));
      }
  }
}

TEST_CASE("floating residual matches the rational pre-inverse residual") {
  // residual(u0) in floating == lambda u0 + cube(u0) evaluated exactly
  Rng rng(44);
  CoeffGrid u = testing::random_grid(rng, 2, 2);
  const int bits = BigFloat::bits_for_digits(30);
  const FloatGrid rf = galerkin_residual(to_float(u, 30), BigFloat::from_rational(kOmega, bits));
  const Frequency freq(34, 20);
  const CoeffGrid f = cube(u);
  const Rational om2 = kOmega * kOmega;
  for (long m = 0; m < 2; ++m)
    for (long n = 0; n < 2; ++n) {
      const Rational lam = Rational(2 * n + 1) * Rational(2 * n + 1) -
                           om2 * Rational(2 * m + 1) * Rational(2 * m + 1);
      const Rational exact = lam * u.c(m, n) + f.c(m, n);
      CHECK(abs(rf.c(m, n) - BigFloat::from_rational(exact, bits)) <
            BigFloat::decimal_power(-23, bits));
    }
}

TEST_CASE("rationalize_candidate") {
  auto z = FloatGrid::zeros(2, 2);
  BranchPoint b{kOmega, z, BigFloat(0), BigFloat(0)};
  CHECK(rationalize_candidate(b, 1000).is_zero());

  auto g = FloatGrid::zeros(1, 1);
  g.c(0, 0) = BigFloat::from_double(1.87497, BigFloat::bits_for_digits(30));
  BranchPoint b2{kOmega, g, BigFloat(0), BigFloat(0)};
  const CoeffGrid r = rationalize_candidate(b2, 1000);
  CHECK(abs(r.c(0, 0) - Rational(187497, 100000)) < Rational(1, 1000));
  mpz_t den;  // denominator respects the cap
  mpz_init(den);
  mpz_set(den, mpq_denref(r.c(0, 0).raw()));
  CHECK(mpz_cmp_ui(den, 1000) <= 0);
  mpz_clear(den);
}

TEST_CASE("sweep on the scalar branch is gap-free and monotone-ish") {
  // M = N = 1: single positive root branch over [1.7, 1.75]
  const auto fams = std::vector<SeedFamily>{{"trunk", 0}};
  const SweepResult r =
      sweep(Rational(17, 10), Rational(7, 4), 10, 1, fams, NewtonOptions::sweeping());
  CHECK(r.gaps.empty());
  CHECK(r.points.size() == 11);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    CHECK(r.points[i].point.newton_residual < BigFloat::decimal_power(-10, 128));
    if (i) CHECK(r.points[i].point.norm > r.points[i - 1].point.norm);  // growing branch
  }
  // empty seed list gives empty output
  const SweepResult empty =
      sweep(Rational(17, 10), Rational(7, 4), 5, 1, {}, NewtonOptions::sweeping());
  CHECK(empty.points.empty());
}

TEST_CASE("equal_up_to_sign") {
  auto a = FloatGrid::zeros(2, 2);
  a.c(0, 0) = BigFloat(1);
  auto b = FloatGrid::zeros(2, 2);
  b.c(0, 0) = BigFloat(-1);
  CHECK(equal_up_to_sign(a, b, BigFloat::decimal_power(-6, 128)));
  auto c = FloatGrid::zeros(2, 2);
  c.c(1, 1) = BigFloat(1);
  CHECK(!equal_up_to_sign(a, c, BigFloat::decimal_power(-6, 128)));
}
