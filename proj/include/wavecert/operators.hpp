// =============================================================================
// operators.hpp
//
// The rigorous operator layer: the diagonal wave inverse L^{-1} and its
// envelope phi, the block operator A (identity outside the Y_{mu,nu} block),
// the residual operator H0 = -3 L^{-1}(u0^2 A .) + I - A, and exact
// weighted-l1 norm bounds for all of them.
//
// Matrix convention (column action): A P_K = sum_J Acal(J,K) P_J with both
// sides addressed through j_index. Everything here is exact rational; the
// only concurrency is a deterministic map over independent columns.
// =============================================================================
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavecert/fourier.hpp"

namespace wavecert {

// --- truncations ---------------------------------------------------------------

struct TruncationSpec {
  long M = 1, N = 1;        // u0 truncation
  long mu = 1, nu = 1;      // Acal block covers modes m < mu, n < nu (mu == nu)
  long Mtilde = 1, Ntilde = 1;  // explicit-check horizon

  // Mtilde >= max(mu, 2M-1), Ntilde >= max(nu, 2N-1), mu == nu.
  void validate() const;
  long block_dim() const { return mu * nu; }  // J_mu
};

// Dense square rational matrix over J indices; the finite block of A.
struct AcalMatrix {
  RationalMatrix m;

  AcalMatrix() = default;
  explicit AcalMatrix(RationalMatrix mat);
  static AcalMatrix identity(long dim);
  long dim() const { return m.rows(); }
  long mu() const;  // sqrt(dim); dim must be a perfect square
};

// --- L^{-1} and phi -------------------------------------------------------------

// L^{-1} P_{m,n} = 4q^2 / (4q^2 (2n+1)^2 - (2p+1)^2 (2m+1)^2) P_{m,n}
Rational linv_coeff(const Frequency& freq, long m, long n);

// phi(m,n) = 4q^2 / (2 max(2q(2n+1), (2p+1)(2m+1)) - 1), the nonincreasing
// envelope with |linv_coeff| <= phi.
Rational phi(const Frequency& freq, long m, long n);

// Exact operator norm of L^{-1} on the weighted-l1 space: the operator is
// diagonal, so ||L^{-1}|| = sup |linv_coeff(m,n)|; the sup is located by a
// finite scan under the phi envelope. (phi(0,0) is the coarser classical
// bound; see the report fields.)
Rational linv_sup_norm(const Frequency& freq);

CoeffGrid apply_linv(const CoeffGrid& v, const Frequency& freq);

// A v with the block structure: modes inside Y_{mu,nu} are transformed by
// Acal in J coordinates, modes outside pass through.
CoeffGrid apply_A(const AcalMatrix& acal, const CoeffGrid& v, const TruncationSpec& t);

// ||A|| <= max( max_K ||Acal P_K|| / rho(K), 1 )
Rational bound_A_norm(const AcalMatrix& acal, const NormWeights& w);

// || N_Omega(0) || = || -L^{-1}(u0^3) - u0 ||
Rational norm_N0(const CoeffGrid& u0, const Frequency& freq, const NormWeights& w);

// C = 3 rho_tau^{4M-2} rho_x^{4N-2} sum |ctil|, ctil = g^{2M-1,2N-1}
Rational tail_constant_C(const CoeffGrid& u0, const NormWeights& w);
Rational tail_constant_C(const SquareGrid& u0sq, const NormWeights& w);

// Smallest T >= max(mu, 2M-1, nu, 2N-1) with phi(T-(2M-1),0)*C < 1 and
// phi(0,T-(2N-1))*C < 1 (the source selection rule for Mtilde = Ntilde).
long select_mtilde_minimal(const CoeffGrid& u0, const Frequency& freq,
                           const NormWeights& w, long mu, long nu);

// Smallest T (>= the minimal one) whose tail terms are also <= `ceiling`,
// used by the certificate pipeline so the tails stop dominating ||H0||.
long select_mtilde_below(const CoeffGrid& u0, const Frequency& freq, const NormWeights& w,
                         long mu, long nu, const Rational& ceiling);

// --- H0 ---------------------------------------------------------------------------

// Precomputed shared state for the column evaluations (owns copies of its
// inputs; instances are immutable after construction and safe to share
// across worker threads).
//
// Every column value is || H0 P_J || / rho(J); the weight attached to an
// output mode K is therefore the *relative* one,
//     rho(K) / rho(J) = rho_tau^{2(m_K - m_J)} rho_x^{2(n_K - n_J)},
// whose exponents stay within the convolution bandwidth. Keeping the big
// absolute powers out of the sums keeps the rational sizes proportional to
// the data, not to the horizon Mtilde.
struct H0Workspace {
  H0Workspace(CoeffGrid u0, AcalMatrix acal, const Frequency& freq, NormWeights w,
              const TruncationSpec& t);

  CoeffGrid u0;
  AcalMatrix acal;
  Frequency freq;
  NormWeights w;
  TruncationSpec trunc;
  SquareGrid u0sq;                 // d grid
  long kmax = 0;                   // (2M + mu - 1)^2, inner continuation horizon

  // rho_*^{2k} for k in [-rel_lo, rel_hi]
  long rel_lo = 0;
  std::vector<Rational> rel_tau;
  std::vector<Rational> rel_x;
  const Rational& rel_pow_tau(long k) const { return rel_tau[static_cast<std::size_t>(k + rel_lo)]; }
  const Rational& rel_pow_x(long k) const { return rel_x[static_cast<std::size_t>(k + rel_lo)]; }

  // d grid over a single common denominator: d(i,j) = d_int(i,j) / d_den,
  // so each g coefficient is a plain integer sum over the 9-point stencil
  // divided by 4 d_den. Same exact values, far cheaper per-term arithmetic.
  DenseMatrix<Rational> d_int;  // integers
  Rational d_den;
  Rational g_scale;  // 3 / (4 d_den), the factor common to all H0 terms

  // cached +-|linv| over the explicit window, indexed (m, n)
  DenseMatrix<Rational> linv_cache;
  DenseMatrix<Rational> linv_abs_cache;

  // integer numerator of g^{m,n}_{m2,n2} over 4 d_den (zero outside bands)
  Rational g_int(long m, long n, long m2, long n2) const;
};

// ||H0 P_J|| for J < J_mu (the Acal block): two-part sum over K < J_mu
// (delta_{JK} - Acal(K,J) terms included) and J_mu <= K < (2M+mu-1)^2
// (pure continuation terms).
Rational h0_column_norm_inner(const H0Workspace& ws, long J);

// ||H0 P_J|| for the identity region, (m,n) = j_inverse(J) with m >= mu or
// n >= nu and m < Mtilde, n < Ntilde:
//   (1/rho(J)) sum_{J2} rho(J2) |3 g^J_{J2} linv(J2)|.
// The sum runs over the nonzero band of g (equal to the spec's J2 <
// (2M+max(m,n))^2 range since g vanishes outside it).
Rational h0_column_norm_outer(const H0Workspace& ws, long J);

struct ColumnExtreme {
  long j = -1;
  Rational value;
};

struct H0Bound {
  Rational bound;            // max of the four components
  Rational inner_max;        // over J < J_mu
  Rational outer_max;        // over the explicit identity region
  Rational tail_m;           // phi(Mtilde-(2M-1), 0) * C
  Rational tail_n;           // phi(0, Ntilde-(2N-1)) * C
  Rational tail_constant;    // C
  ColumnExtreme worst_inner;
  ColumnExtreme worst_outer;
  bool aborted = false;      // early-exit probe found a column >= 1
  long aborted_column = -1;  // smallest offending J (schedule-independent)
};

struct H0Options {
  unsigned workers = 1;
  bool abort_when_geq_one = false;  // probe mode for the mu-selection loop
  // First outer column to evaluate (default: the block boundary). The
  // identity-region columns are pure functions of (u0, freq, weights), so a
  // horizon extension only needs the fresh J range; callers merge maxima.
  long outer_begin = -1;
  bool skip_inner = false;  // caller already holds the block-column maxima
};

H0Bound bound_h0_norm(const CoeffGrid& u0, const AcalMatrix& acal, const Frequency& freq,
                      const NormWeights& w, const TruncationSpec& t, const H0Options& opt);

// --- bound report -----------------------------------------------------------------

struct BoundReport {
  Rational norm_u0;
  Rational bound_A;
  Rational bound_H0;
  Rational norm_N0;
  Rational bound_Linv;       // exact diagonal norm sup |linv_coeff|
  Rational phi00;            // classical envelope bound phi(0,0), for reference
  Rational tail_constant;    // C
  Rational tail_m, tail_n;
  ColumnExtreme worst_inner, worst_outer;
  TruncationSpec trunc;
};

BoundReport compute_bounds(const CoeffGrid& u0, const AcalMatrix& acal,
                           const Frequency& freq, const NormWeights& w,
                           const TruncationSpec& t, unsigned workers);

}  // namespace wavecert
