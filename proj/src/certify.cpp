#include "wavecert/certify.hpp"

namespace wavecert {

void Certificate::validate() const {
  trunc.validate();
  if (!(k0 > Rational(0) && k0 < Rational(1)))
    throw std::invalid_argument("Certificate: 0 < K0 < 1 required");
  if (!(delta > Rational(0))) throw std::invalid_argument("Certificate: delta > 0 required");
  if (acal.dim() != trunc.block_dim())
    throw std::invalid_argument("Certificate: Acal dimension does not match mu*nu");
  if (u0.modes_m() != trunc.M || u0.modes_n() != trunc.N)
    throw std::invalid_argument("Certificate: u0 dimensions do not match TruncationSpec");
}

namespace {

Rational contraction_lhs(const BoundReport& r, const Rational& delta) {
  const Rational alpha = r.bound_Linv * r.norm_u0 * r.bound_A * r.bound_A;
  const Rational beta = r.bound_Linv * r.bound_A * r.bound_A * r.bound_A;
  return r.bound_H0 + Rational(6) * alpha * delta + Rational(3) * beta * delta * delta;
}

}  // namespace

VerificationOutcome evaluate_certificate(const BoundReport& report, const Rational& k0,
                                         const Rational& delta) {
  VerificationOutcome out;
  out.report = report;
  out.lhs_contraction = contraction_lhs(report, delta);
  out.n0_threshold = (Rational(1) - k0) * delta;
  out.epsilon = report.bound_A * delta;
  if (!(out.lhs_contraction < k0))
    out.failure_reason = "contraction inequality violated: lhs >= K0";
  else if (!(k0 < Rational(1)))
    out.failure_reason = "K0 >= 1";
  else if (!(report.norm_N0 < out.n0_threshold))
    out.failure_reason = "residual inequality violated: ||N(0)|| >= (1-K0) delta";
  out.accepted = out.failure_reason.empty();
  return out;
}

VerificationOutcome verify(const Certificate& cert, unsigned workers) {
  cert.validate();
  const BoundReport report =
      compute_bounds(cert.u0, cert.acal, cert.freq, cert.weights, cert.trunc, workers);
  return evaluate_certificate(report, cert.k0, cert.delta);
}

SuggestedConstants suggest_constants(const BoundReport& report) {
  SuggestedConstants out;
  const Rational one(1);
  const Rational& B = report.bound_H0;
  const Rational alpha = report.bound_Linv * report.norm_u0 * report.bound_A * report.bound_A;
  const Rational beta = report.bound_Linv * report.bound_A * report.bound_A * report.bound_A;
  const Rational& n0 = report.norm_N0;

  if (!(B < one)) {
    out.binding = "bound_H0 >= 1";
    return out;
  }
  auto lhs = [&](const Rational& d) {
    return B + Rational(6) * alpha * d + Rational(3) * beta * d * d;
  };
  auto margin_of = [&](const Rational& k0, const Rational& d) {
    // min(K0 / lhs, (1-K0) d / n0), vacuous factors skipped
    std::optional<Rational> m;
    const Rational L = lhs(d);
    if (!L.is_zero()) m = k0 / L;
    if (!n0.is_zero()) {
      const Rational m2 = (one - k0) * d / n0;
      if (!m || m2 < *m) m = m2;
    }
    return m ? *m : Rational(10);  // both constraints vacuous
  };

  // A compact K0 is nicer to store and no less rigorous: bounds may round up.
  auto compact_k0 = [&](const Rational& k0, const Rational& d) {
    const Rational k0c = round_up_decimal(k0, 12);
    const bool ok = lhs(d) < k0c && k0c < one && (n0.is_zero() || n0 < (one - k0c) * d);
    return ok ? k0c : k0;
  };

  if (n0.is_zero()) {
    if (alpha.is_zero() && beta.is_zero()) {
      // lhs is constant B; canonical pick
      out.k0 = B.is_zero() ? Rational(1, 2) : compact_k0((B + one) / Rational(2), Rational(1));
      out.delta = Rational(1);
    } else {
      // shrink delta until lhs clears (1+B)/2, then sit K0 halfway above lhs
      Rational d(1);
      const Rational target = (one + B) / Rational(2);
      while (!(lhs(d) < target)) d = d / Rational(2);
      out.delta = d;
      out.k0 = compact_k0((lhs(d) + one) / Rational(2), d);
    }
    out.margin = margin_of(out.k0, out.delta);
    out.feasible = true;
    return out;
  }

  Rational delta;
  if (alpha.is_zero() && beta.is_zero()) {
    // margin(d) = d / (n0 + d B), increasing; feasible once d > n0 / (1-B)
    delta = B.is_zero() ? Rational(4) * n0 : Rational(2) * n0 / (one - B);
  } else {
    // maximize d / (n0 + d lhs(d)); derivative sign = n0 - 6 alpha d^2 - 6 beta d^3
    auto deriv_positive = [&](const Rational& d) {
      return n0 - Rational(6) * alpha * d * d - Rational(6) * beta * d * d * d > Rational(0);
    };
    Rational lo(0), hi(1);
    while (deriv_positive(hi)) hi = hi * Rational(2);
    for (int step = 0; step < 40; ++step) {
      const Rational mid = (lo + hi) / Rational(2);
      if (deriv_positive(mid))
        lo = mid;
      else
        hi = mid;
    }
    delta = (lo + hi) / Rational(2);
  }

  const Rational L = lhs(delta);
  Rational k0 = delta * L / (n0 + delta * L);  // equalizes the two margin factors
  if (k0 > Rational(0) && k0 < one) k0 = compact_k0(k0, delta);
  out.margin = margin_of(k0, delta);
  if (out.margin > one && k0 > Rational(0) && k0 < one && L < k0 &&
      n0 < (one - k0) * delta) {
    out.feasible = true;
    out.k0 = k0;
    out.delta = delta;
  } else {
    out.binding = "no (K0, delta) window: ||N(0)|| too large for the contraction margin";
  }
  return out;
}

DistinctnessReport distinctness(const std::vector<const Certificate*>& certs,
                                const std::vector<Rational>& epsilons, const NormWeights& w) {
  if (certs.size() != epsilons.size())
    throw std::invalid_argument("distinctness: certificate/epsilon count mismatch");
  DistinctnessReport out;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    for (std::size_t j = i + 1; j < certs.size(); ++j) {
      const auto& a = certs[i]->u0;
      const auto& b = certs[j]->u0;
      const long Mo = std::max(a.modes_m(), b.modes_m());
      const long No = std::max(a.modes_n(), b.modes_n());
      const CoeffGrid pa = padded(a, Mo, No), pb = padded(b, Mo, No);
      DistinctnessPair pr;
      pr.i = i;
      pr.j = j;
      pr.diff_norm = weighted_norm(grid_diff(pa, pb), w);
      pr.sum_norm = weighted_norm(grid_sum(pa, pb), w);
      pr.threshold = epsilons[i] + epsilons[j];
      pr.distinct = pr.diff_norm > pr.threshold && pr.sum_norm > pr.threshold;
      out.all_distinct = out.all_distinct && pr.distinct;
      out.pairs.push_back(std::move(pr));
    }
  }
  return out;
}

PipelineResult build_certificate(const CoeffGrid& u0, const Frequency& freq,
                                 const NormWeights& w, const PipelineOptions& opt,
                                 const std::string& label) {
  opt.policy.validate();
  if (opt.mu_start < 1) throw std::invalid_argument("build_certificate: mu_start >= 1");
  const long M = u0.modes_m(), N = u0.modes_n();
  const SquareGrid u0sq = square(u0);

  PipelineResult res;
  // mu-independent quantities
  const Rational norm_u0_val = weighted_norm(u0, w);
  const Rational norm_n0_val = norm_N0(u0, freq, w);
  const Rational linv_val = linv_sup_norm(freq);
  const Rational phi00_val = phi(freq, 0, 0);
  for (long mu = opt.mu_start; mu <= opt.mu_cap; ++mu) {
    AcalMatrix acal;
    try {
      acal = invert_and_rationalize(assemble_atilde(u0sq, freq, mu), opt.policy);
    } catch (const InversionError&) {
      res.rejected_mus.push_back(mu);
      continue;
    }
    TruncationSpec t;
    t.M = M;
    t.N = N;
    t.mu = t.nu = mu;
    t.Mtilde = t.Ntilde = select_mtilde_minimal(u0, freq, w, mu, mu);

    H0Options probe_opt;
    probe_opt.workers = opt.workers;
    probe_opt.abort_when_geq_one = true;
    H0Bound h0 = bound_h0_norm(u0, acal, freq, w, t, probe_opt);
    if (h0.aborted) {
      res.rejected_mus.push_back(mu);
      continue;
    }

    const Rational bound_A_val = bound_A_norm(acal, w);
    if (opt.extend_mtilde) {
      // The tails decay like 1/Mtilde, so the horizon is extended only far
      // enough: down to the explicit column maximum E when that is free, but
      // never past the point where the (K0, delta) margin is comfortable.
      Rational ceiling = h0.inner_max;
      if (h0.outer_max > ceiling) ceiling = h0.outer_max;
      auto margin_at = [&](const Rational& B) {
        BoundReport probe_rep;
        probe_rep.bound_H0 = B;
        probe_rep.norm_u0 = norm_u0_val;
        probe_rep.bound_A = bound_A_val;
        probe_rep.bound_Linv = linv_val;
        probe_rep.norm_N0 = norm_n0_val;
        const SuggestedConstants sc = suggest_constants(probe_rep);
        return sc.feasible ? sc.margin : Rational(0);
      };
      const Rational target(9, 8);
      if (margin_at(ceiling) > target) {
        // largest tail level whose margin still clears the target (margin is
        // nonincreasing in the bound); 25 exact bisection steps
        Rational lo = ceiling, hi = Rational(1);
        for (int step = 0; step < 25; ++step) {
          const Rational mid = (lo + hi) / Rational(2);
          if (margin_at(mid) > target)
            lo = mid;
          else
            hi = mid;
        }
        ceiling = lo;
      }
      const long text = select_mtilde_below(u0, freq, w, mu, mu, ceiling);
      if (text > t.Mtilde) {
        const long probe_horizon = t.Mtilde;
        t.Mtilde = t.Ntilde = text;
        H0Options ext_opt;
        ext_opt.workers = opt.workers;
        ext_opt.outer_begin = probe_horizon * probe_horizon;
        ext_opt.skip_inner = true;
        const H0Bound ext = bound_h0_norm(u0, acal, freq, w, t, ext_opt);
        // merge: inner columns are horizon-independent, outer columns are
        // pure functions of J, the tails belong to the new horizon
        H0Bound merged = ext;
        merged.inner_max = h0.inner_max;
        merged.worst_inner = h0.worst_inner;
        if (h0.outer_max > merged.outer_max) {
          merged.outer_max = h0.outer_max;
          merged.worst_outer = h0.worst_outer;
        }
        merged.bound = merged.inner_max;
        if (merged.outer_max > merged.bound) merged.bound = merged.outer_max;
        if (merged.tail_m > merged.bound) merged.bound = merged.tail_m;
        if (merged.tail_n > merged.bound) merged.bound = merged.tail_n;
        h0 = merged;
      }
    }

    BoundReport report;
    report.trunc = t;
    report.norm_u0 = norm_u0_val;
    report.bound_A = bound_A_val;
    report.norm_N0 = norm_n0_val;
    report.bound_Linv = linv_val;
    report.phi00 = phi00_val;
    report.bound_H0 = h0.bound;
    report.tail_constant = h0.tail_constant;
    report.tail_m = h0.tail_m;
    report.tail_n = h0.tail_n;
    report.worst_inner = h0.worst_inner;
    report.worst_outer = h0.worst_outer;

    const SuggestedConstants sc = suggest_constants(report);
    if (!sc.feasible) {
      res.rejected_mus.push_back(mu);
      continue;
    }

    res.cert = Certificate{freq, u0, std::move(acal), t, w, sc.k0, sc.delta, label};
    res.outcome = evaluate_certificate(report, sc.k0, sc.delta);
    res.constants = sc;
    return res;
  }
  throw std::runtime_error("build_certificate: no mu <= " + std::to_string(opt.mu_cap) +
                           " closes the certificate");
}

}  // namespace wavecert
