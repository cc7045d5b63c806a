// =============================================================================
// galerkin.hpp
//
// Floating-point candidate generation (nothing here is rigorous): Newton's
// method on the Galerkin truncation of
//     Omega^2 u_tt - u_xx + u^3 = 0
// in the P basis, residual r_{m,n} = ((2n+1)^2 - Omega^2 (2m+1)^2) c_{m,n}
// + f_{m,n}(c), natural-parameter frequency sweeps, and continued-fraction
// rationalization of solutions into exact certificate candidates. All
// floating work runs in software-controlled precision (BigFloat), default
// 30 decimal digits, so candidates rationalize far below double noise.
// =============================================================================
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavecert/fourier.hpp"

namespace wavecert {

struct NewtonOptions {
  int digits = 30;             // working precision (decimal digits)
  Rational tol = Rational(1, 1);  // max-norm residual target; set via make()
  int max_iter = 60;

  static NewtonOptions make(int digits_, const Rational& tol_, int max_iter_ = 60) {
    NewtonOptions o;
    o.digits = digits_;
    o.tol = tol_;
    o.max_iter = max_iter_;
    return o;
  }
  // Certified-candidate default: 30 digits, tol 10^-25.
  static NewtonOptions certified() { return make(30, Rational(1) / Rational::decimal_power(25)); }
  // Sweep default: tol 10^-10.
  static NewtonOptions sweeping() { return make(30, Rational(1) / Rational::decimal_power(10)); }
};

struct NewtonDivergence : std::runtime_error {
  double last_residual;
  NewtonDivergence(double r, int iters)
      : std::runtime_error("Newton did not converge after " + std::to_string(iters) +
                           " iterations (residual " + std::to_string(r) + ")"),
        last_residual(r) {}
};

struct SingularJacobian : std::runtime_error {
  long pivot_index;
  explicit SingularJacobian(long pivot)
      : std::runtime_error("Galerkin Jacobian singular at working precision (pivot " +
                           std::to_string(pivot) + ")"),
        pivot_index(pivot) {}
};

struct BranchPoint {
  Rational omega;           // exact frequency the system was solved at
  FloatGrid solution;
  BigFloat norm;            // weighted l1 norm at the default weights
  BigFloat newton_residual; // final max-norm residual
};

// Residual of the truncated system at the grid's own truncation.
FloatGrid galerkin_residual(const FloatGrid& v, const BigFloat& omega);

// Jacobian = diag((2n+1)^2 - omega^2 (2m+1)^2) + 3 * (multiplication by v^2),
// rows/cols in row-major (m*N + n) order.
FloatMatrix galerkin_jacobian(const FloatGrid& v, const BigFloat& omega);

BranchPoint newton_solve(const FloatGrid& initial, const Rational& omega,
                         const NewtonOptions& opt);

CoeffGrid rationalize_candidate(const BranchPoint& b, unsigned long long max_denominator);

// Seed families built from the scalar trunk root c(Omega) = sqrt((Omega^2-1) 16/9)
// of the 1x1 system (1 - Omega^2) c + (9/16) c^3 = 0, placed at mode (k,k)
// with amplitude (2k+1) c: the exact rescaling u -> (2k+1) u((2k+1)tau,
// (2k+1)x) maps solutions of the same equation into higher mode lattices.
struct SeedFamily {
  std::string id;
  long k = 0;
};
std::vector<SeedFamily> default_seed_families(long M, long N);
FloatGrid family_seed(const SeedFamily& fam, const Rational& omega, long M, long N, int digits);

struct SweepEntry {
  std::string branch_id;
  BranchPoint point;
};
struct SweepGap {
  std::string branch_id;
  Rational omega;
  std::string reason;
};
struct SweepResult {
  std::vector<SweepEntry> points;
  std::vector<SweepGap> gaps;
};

// Natural-parameter continuation: march omega from lo to hi inclusive in
// `steps` equal rational steps, warm-starting each family's Newton from its
// previous converged point (fresh family seed after a gap). Non-convergence
// is recorded as a gap and the sweep continues (the branch may fold).
SweepResult sweep(const Rational& omega_lo, const Rational& omega_hi, long steps, long trunc,
                  const std::vector<SeedFamily>& seeds, const NewtonOptions& opt);

// max |a - b| or max |a + b| below tol (the Z2 symmetry u -> -u).
bool equal_up_to_sign(const FloatGrid& a, const FloatGrid& b, const BigFloat& tol);

// Weighted l1 norm in floating arithmetic (diagnostic, non-rigorous).
BigFloat float_weighted_norm(const FloatGrid& v, const NormWeights& w, int digits);

}  // namespace wavecert
