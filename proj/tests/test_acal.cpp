#include "doctest.h"
#include "test_support.hpp"
#include "wavecert/acal.hpp"
#include "wavecert/certify.hpp"

using namespace wavecert;
using testing::random_grid;
using testing::Rng;

namespace {
const Frequency kFreq(34, 20);
}

TEST_CASE("assemble_atilde: zero candidate gives the identity") {
  const auto at = assemble_atilde(CoeffGrid::zeros(2, 2), kFreq, 3);
  REQUIRE(at.rows() == 9);
  for (long i = 0; i < 9; ++i)
    for (long j = 0; j < 9; ++j) CHECK(at(i, j) == (i == j ? Rational(1) : Rational(0)));
}

TEST_CASE("assemble_atilde: 1x1 block of the fundamental mode") {
  auto u = CoeffGrid::zeros(1, 1);
  u.c(0, 0) = Rational(1);
  const auto at = assemble_atilde(u, kFreq, 1);
  REQUIRE(at.rows() == 1);
  // 1 + 3 (9/16)(-1600/3161) = 461/3161
  CHECK(at(0, 0) == Rational(461, 3161));
}

TEST_CASE("assemble_atilde columns unroll through mult_by_basis and apply_linv") {
  Rng rng(31);
  const CoeffGrid u = random_grid(rng, 2, 2);
  const long mu = 3;
  const auto at = assemble_atilde(u, kFreq, mu);
  const auto usq = square(u);
  for (long K = 0; K < mu * mu; ++K) {
    const auto [mK, nK] = j_inverse(K);
    const CoeffGrid col = apply_linv(mult_by_basis(usq, mK, nK), kFreq);
    for (long J = 0; J < mu * mu; ++J) {
      const auto [mJ, nJ] = j_inverse(J);
      Rational expect = (mJ < col.modes_m() && nJ < col.modes_n())
                            ? Rational(3) * col.c(mJ, nJ)
                            : Rational(0);
      if (J == K) expect += Rational(1);
      CHECK(at(J, K) == expect);
    }
  }
}

TEST_CASE("invert_and_rationalize: identity and diagonal") {
  PrecisionPolicy pol;
  const long dim = 4;
  RationalMatrix id = RationalMatrix::Constant(dim, dim, Rational(0));
  for (long i = 0; i < dim; ++i) id(i, i) = Rational(1);
  const AcalMatrix a = invert_and_rationalize(id, pol);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) CHECK(a.m(i, j) == (i == j ? Rational(1) : Rational(0)));

  RationalMatrix diag = RationalMatrix::Constant(2, 2, Rational(0));
  diag(0, 0) = Rational(2);
  diag(1, 1) = Rational(4);
  const AcalMatrix ai = invert_and_rationalize(diag, pol);
  CHECK(ai.m(0, 0) == Rational(1, 2));
  CHECK(ai.m(1, 1) == Rational(1, 4));
  CHECK(ai.m(0, 1).is_zero());
}

TEST_CASE("invert_and_rationalize: 1x1 reciprocal recovered exactly") {
  PrecisionPolicy pol;
  RationalMatrix m = RationalMatrix::Constant(1, 1, Rational(461, 3161));
  const AcalMatrix a = invert_and_rationalize(m, pol);
  CHECK(a.m(0, 0) == Rational(3161, 461));
}

TEST_CASE("invert_and_rationalize: singular matrix names the pivot") {
  PrecisionPolicy pol;
  RationalMatrix z = RationalMatrix::Constant(3, 3, Rational(1));  // rank 1
  CHECK_THROWS_AS(invert_and_rationalize(z, pol), InversionError);
  PrecisionPolicy bad;
  bad.digits = 10;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("invert_and_rationalize is deterministic") {
  Rng rng(32);
  const CoeffGrid u = random_grid(rng, 2, 2);
  const auto at = assemble_atilde(u, kFreq, 3);
  PrecisionPolicy pol;
  const AcalMatrix a1 = invert_and_rationalize(at, pol);
  const AcalMatrix a2 = invert_and_rationalize(at, pol);
  for (long i = 0; i < a1.dim(); ++i)
    for (long j = 0; j < a1.dim(); ++j) {
      CHECK(a1.m(i, j) == a2.m(i, j));
      CHECK(a1.m(i, j).str() == a2.m(i, j).str());
    }
}

TEST_CASE("residual_norm examples") {
  const NormWeights w = NormWeights::defaults();
  RationalMatrix diag = RationalMatrix::Constant(4, 4, Rational(0));
  for (long i = 0; i < 4; ++i) diag(i, i) = Rational(i + 2);
  AcalMatrix exact = AcalMatrix::identity(4);
  for (long i = 0; i < 4; ++i) exact.m(i, i) = Rational(1, i + 2);
  CHECK(residual_norm(exact, diag, w).is_zero());

  // Acal = I against Atilde = 2I: I - 2I = -I, column ratios 1
  RationalMatrix twice = RationalMatrix::Constant(4, 4, Rational(0));
  for (long i = 0; i < 4; ++i) twice(i, i) = Rational(2);
  CHECK(residual_norm(AcalMatrix::identity(4), twice, w) == Rational(1));

  // nonnegativity, and a good approximate inverse has a tiny residual
  Rng rng(33);
  const CoeffGrid u = random_grid(rng, 2, 2);
  const auto at = assemble_atilde(u, kFreq, 2);
  const AcalMatrix a = invert_and_rationalize(at, PrecisionPolicy{});
  CHECK(residual_norm(a, at, w) >= Rational(0));
  CHECK(residual_norm(a, at, w) < Rational(1) / Rational::decimal_power(6));
}

TEST_CASE("corrupted Acal is rejected, never wrongly accepted") {
  const NormWeights w = NormWeights::defaults();
  auto u = CoeffGrid::zeros(1, 1);
  u.c(0, 0) = Rational(1874092, 1000000);
  AcalMatrix junk = AcalMatrix::identity(1);
  junk.m(0, 0) = Rational(40);  // far from the true inverse
  TruncationSpec t;
  t.M = t.N = 1;
  t.mu = t.nu = 1;
  t.Mtilde = t.Ntilde = select_mtilde_minimal(u, kFreq, w, 1, 1);
  H0Options opt;
  const H0Bound b = bound_h0_norm(u, junk, kFreq, w, t, opt);
  CHECK(b.bound > Rational(1));
  BoundReport rep;
  rep.trunc = t;
  rep.norm_u0 = weighted_norm(u, w);
  rep.bound_A = bound_A_norm(junk, w);
  rep.bound_H0 = b.bound;
  rep.norm_N0 = norm_N0(u, kFreq, w);
  rep.bound_Linv = linv_sup_norm(kFreq);
  const SuggestedConstants sc = suggest_constants(rep);
  CHECK(!sc.feasible);
  CHECK(sc.binding == "bound_H0 >= 1");
}
