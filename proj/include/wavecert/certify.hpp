// =============================================================================
// certify.hpp
//
// Contraction-certificate checking. For a candidate u0, block operator A and
// constants (K0, delta), the certified inequalities are
//
//   ||H0|| + 6 ||L^{-1}|| ||u0|| ||A||^2 delta + 3 ||L^{-1}|| ||A||^3 delta^2
//        < K0 < 1,
//   ||N(0)|| < (1 - K0) delta,
//
// all evaluated in exact rational arithmetic; acceptance means the fixed-point
// map is a contraction of B_delta(0) and a true solution lies within
// epsilon = ||A|| delta of u0. Also: constant suggestion (margin-maximizing
// exact bisection), pairwise distinctness, and the end-to-end pipeline that
// grows mu and Mtilde until a certificate closes.
// =============================================================================
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavecert/acal.hpp"
#include "wavecert/operators.hpp"

namespace wavecert {

struct Certificate {
  Frequency freq;
  CoeffGrid u0;
  AcalMatrix acal;
  TruncationSpec trunc;
  NormWeights weights;
  Rational k0;
  Rational delta;
  std::string label;

  // 0 < K0 < 1, delta > 0, truncation invariants.
  void validate() const;
};

struct VerificationOutcome {
  bool accepted = false;
  BoundReport report;
  Rational lhs_contraction;  // ||H0|| + 6||L^-1|| ||u0|| ||A||^2 d + 3||L^-1|| ||A||^3 d^2
  Rational n0_threshold;     // (1 - K0) delta
  Rational epsilon;          // ||A|| delta
  std::string failure_reason;
};

VerificationOutcome verify(const Certificate& cert, unsigned workers);

// The decision logic alone, on bounds that are already computed
// (verify = compute_bounds + evaluate_certificate).
VerificationOutcome evaluate_certificate(const BoundReport& report, const Rational& k0,
                                         const Rational& delta);

struct SuggestedConstants {
  bool feasible = false;
  Rational k0;
  Rational delta;
  Rational margin;          // min(K0/lhs, (1-K0) delta / n0); > 1 iff certifiable
  std::string binding;      // names the binding constraint when infeasible
};

// Margin-maximizing (K0, delta) from already-computed bounds: for fixed delta
// the best K0 equates the two margin factors, K0 = dL/(n0 + dL) with
// L = lhs(delta); the remaining 1-D problem is unimodal and solved by 40
// exact bisection steps on the derivative sign n0 - 6 alpha d^2 - 6 beta d^3.
SuggestedConstants suggest_constants(const BoundReport& report);

struct DistinctnessPair {
  std::size_t i = 0, j = 0;
  Rational diff_norm;   // ||u0_i - u0_j||
  Rational sum_norm;    // ||u0_i + u0_j||
  Rational threshold;   // eps_i + eps_j
  bool distinct = false;
};

struct DistinctnessReport {
  std::vector<DistinctnessPair> pairs;
  bool all_distinct = true;
};

// Pairwise || u0_i +- u0_j || > eps_i + eps_j over all unordered pairs;
// grids are zero-padded to common dimensions.
DistinctnessReport distinctness(const std::vector<const Certificate*>& certs,
                                const std::vector<Rational>& epsilons,
                                const NormWeights& w);

// --- end-to-end pipeline ------------------------------------------------------

struct PipelineOptions {
  long mu_start = 1;
  long mu_cap = 64;
  PrecisionPolicy policy;
  unsigned workers = 1;
  bool extend_mtilde = true;  // grow Mtilde until the tail terms stop dominating
};

struct PipelineResult {
  Certificate cert;
  VerificationOutcome outcome;
  SuggestedConstants constants;
  std::vector<long> rejected_mus;  // probe history
};

// From a rational candidate u0: raise mu from mu_start until the H0 probe
// stays below 1 and suggest_constants reports a positive margin, extend the
// explicit horizon so the tails stop binding, then verify the assembled
// certificate. Throws std::runtime_error if mu_cap is exhausted.
PipelineResult build_certificate(const CoeffGrid& u0, const Frequency& freq,
                                 const NormWeights& w, const PipelineOptions& opt,
                                 const std::string& label);

}  // namespace wavecert
