// =============================================================================
// acal.hpp
//
// Construction of the approximate inverse Acal of
//     Atilde = I + 3 Pi_{mu,nu} L^{-1} Lambda_{u0^2}   on Y_{mu,nu}:
// exact rational assembly, full-pivot LU inversion in software-controlled
// floating precision, and continued-fraction rationalization back to exact
// entries. Correctness of the certificate never depends on the quality of
// Acal; a poor approximation only drives ||H0|| above 1 and gets rejected.
// =============================================================================
#pragma once

#include <stdexcept>
#include <string>

#include "wavecert/operators.hpp"

namespace wavecert {

struct PrecisionPolicy {
  int digits = 64;                                   // decimal digits for the inversion
  unsigned long long max_denominator = 1000000000000ull;  // rationalization cap

  void validate() const {
    if (digits < 30) throw std::invalid_argument("PrecisionPolicy: digits >= 30 required");
    if (max_denominator < 1000000ull)
      throw std::invalid_argument("PrecisionPolicy: max_denominator >= 10^6 required");
  }
};

struct InversionError : std::runtime_error {
  long pivot_index;
  explicit InversionError(long pivot)
      : std::runtime_error("Atilde is singular at working precision (pivot " +
                           std::to_string(pivot) + ")"),
        pivot_index(pivot) {}
};

// Atilde(J,K) = delta_{JK} + 3 linv(j_inverse(J)) g^{j_inverse(K)}_{j_inverse(J)},
// J, K < mu^2 (column action; the projection discards modes outside Y_{mu,mu}).
RationalMatrix assemble_atilde(const CoeffGrid& u0, const Frequency& freq, long mu);
RationalMatrix assemble_atilde(const SquareGrid& u0sq, const Frequency& freq, long mu);

// Float inverse of Atilde at `digits` precision (full-pivot LU), then
// entrywise continued-fraction rationalization with the denominator cap;
// entries below 10^{8-digits} collapse to exact zero. Pure function of
// (Atilde, policy): bit-identical across runs and machines.
AcalMatrix invert_and_rationalize(const RationalMatrix& atilde, const PrecisionPolicy& policy);

// Weighted column-sup bound of I - Acal * Atilde (diagnostic for how close
// Acal is to the true inverse).
Rational residual_norm(const AcalMatrix& acal, const RationalMatrix& atilde,
                       const NormWeights& w);

}  // namespace wavecert
