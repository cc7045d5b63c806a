// =============================================================================
// wavecert_main.cpp
//
// Command-line front end:
//   verify      exact-arithmetic certificate check from a manifest
//   build-acal  assemble + invert the approximate-inverse block
//   find        Newton candidate at a fixed frequency, rationalized to disk
//   sweep       frequency sweep emitting a plot-ready branch table
//   distinct    pairwise separation check across certificates
//   oracle      brute-force self-check suites (independent expansion routes)
//
// Every computed bound lands in the run log both as an exact rational and as
// a non-normative decimal. Exit status 0 iff the command's primary check
// passed.
// =============================================================================
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wavecert/galerkin.hpp"
#include "wavecert/io.hpp"
#include "wavecert/parallel.hpp"
#include "wavecert/trig_expand.hpp"

using namespace wavecert;

namespace {

Rational rational_arg(const std::string& text, const std::string& what) {
  const auto r = Rational::parse(text);
  if (!r) throw CLI::ValidationError(what, "expected a rational 'num/den', got '" + text + "'");
  return *r;
}

// Collect the log, then emit to stdout and (optionally) a file.
struct LogSink {
  std::ostringstream buffer;
  std::string out_path;

  ~LogSink() {
    const std::string text = buffer.str();
    std::cout << text;
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      f << text;
    }
  }
};

struct VerifyArgs {
  std::string manifest;
  unsigned jobs = hardware_workers();
  std::string log_path;
};

int run_verify(const VerifyArgs& a) {
  LogSink sink;
  sink.out_path = a.log_path;
  io::ReportLog log(sink.buffer);
  const io::Manifest man = io::read_manifest(a.manifest);

  TruncationSpec t;
  t.M = man.u0.modes_m();
  t.N = man.u0.modes_n();
  t.mu = t.nu = man.mu.value_or(man.acal.mu());
  if (t.mu != man.acal.mu())
    throw std::invalid_argument("manifest: mu does not match the Acal dimension");
  t.Mtilde = t.Ntilde =
      man.mtilde.value_or(select_mtilde_minimal(man.u0, man.freq, man.weights, t.mu, t.nu));
  t.validate();

  log.section("run");
  log.kv("command", std::string("verify"));
  log.kv("manifest", a.manifest);
  log.kv("label", man.label);
  log.kv("omega", man.freq.omega());
  log.kv("workers", static_cast<long>(a.jobs));
  log.kv("rho_tau", man.weights.rho_tau);
  log.kv("rho_x", man.weights.rho_x);

  const BoundReport report =
      compute_bounds(man.u0, man.acal, man.freq, man.weights, t, a.jobs);
  io::log_report(log, report);

  Rational k0, delta;
  if (man.k0 && man.delta) {
    k0 = *man.k0;
    delta = *man.delta;
    log.kv("constants_source", std::string("manifest"));
  } else {
    const SuggestedConstants sc = suggest_constants(report);
    log.kv("constants_source", std::string("suggested"));
    if (!sc.feasible) {
      log.kv("feasible", false);
      log.kv("failure_reason", sc.binding);
      return 1;
    }
    log.kv("margin", sc.margin);
    k0 = sc.k0;
    delta = sc.delta;
  }
  const VerificationOutcome out = evaluate_certificate(report, k0, delta);
  io::log_outcome(log, out, k0, delta);
  return out.accepted ? 0 : 1;
}

struct BuildAcalArgs {
  std::string u0_path;
  std::string omega;
  long mu = 1;
  int digits = 64;
  unsigned long long max_denom = 1000000000000ull;
  std::string out_path;
  bool select_mu = false;
  long mu_cap = 64;
  std::string emit_manifest;
  std::string label;
  unsigned jobs = hardware_workers();
  std::string log_path;
};

int run_build_acal(const BuildAcalArgs& a) {
  LogSink sink;
  sink.out_path = a.log_path;
  io::ReportLog log(sink.buffer);
  const Frequency freq = Frequency::from_rational_text(a.omega);
  const CoeffGrid u0 = io::read_grid_auto(a.u0_path);
  const NormWeights w = NormWeights::defaults();
  PrecisionPolicy pol;
  pol.digits = a.digits;
  pol.max_denominator = a.max_denom;
  pol.validate();

  log.section("run");
  log.kv("command", std::string("build-acal"));
  log.kv("u0", a.u0_path);
  log.kv("omega", freq.omega());
  log.kv("digits", static_cast<long>(a.digits));
  log.kv("max_denominator", static_cast<long>(a.max_denom));
  log.kv("workers", static_cast<long>(a.jobs));

  if (!a.select_mu) {
    log.kv("mu", a.mu);
    const RationalMatrix at = assemble_atilde(u0, freq, a.mu);
    const AcalMatrix acal = invert_and_rationalize(at, pol);
    io::write_matrix(a.out_path, acal.m);
    log.kv("acal_out", a.out_path);
    log.kv("bound_A", bound_A_norm(acal, w));
    log.kv("inverse_residual", residual_norm(acal, at, w));
    return 0;
  }

  PipelineOptions opt;
  opt.mu_start = a.mu;
  opt.mu_cap = a.mu_cap;
  opt.policy = pol;
  opt.workers = a.jobs;
  const PipelineResult res = build_certificate(u0, freq, w, opt, a.label);
  io::write_matrix(a.out_path, res.cert.acal.m);
  log.kv("acal_out", a.out_path);
  {
    std::ostringstream mus;
    for (const long m : res.rejected_mus) mus << m << " ";
    log.kv("rejected_mus", mus.str());
  }
  log.kv("selected_mu", res.cert.trunc.mu);
  log.kv("selected_mtilde", res.cert.trunc.Mtilde);
  io::log_report(log, res.outcome.report);
  io::log_outcome(log, res.outcome, res.cert.k0, res.cert.delta);
  if (!a.emit_manifest.empty()) {
    namespace fs = std::filesystem;
    // rounded-up radius: still a valid bound on ||u - u0||, compact on disk
    const Rational eps_out = round_up_decimal(res.outcome.epsilon, 12);
    io::write_manifest(a.emit_manifest, res.cert, fs::absolute(a.u0_path),
                       fs::absolute(a.out_path), eps_out);
    log.kv("manifest_out", a.emit_manifest);
  }
  return res.outcome.accepted ? 0 : 1;
}

struct FindArgs {
  std::string omega;
  long trunc = 5;
  std::string seed_path;
  int digits = 30;
  std::string tol = "1/10000000000000000000000000";  // 10^-25
  unsigned long long max_denom = 1000000ull;
  std::string out_path;
  std::string log_path;
};

int run_find(const FindArgs& a) {
  LogSink sink;
  sink.out_path = a.log_path;
  io::ReportLog log(sink.buffer);
  const Rational omega = rational_arg(a.omega, "--omega");
  const NewtonOptions opt = NewtonOptions::make(a.digits, rational_arg(a.tol, "--tol"));

  FloatGrid start = FloatGrid::zeros(a.trunc, a.trunc);
  if (a.seed_path.empty()) {
    start = family_seed({"trunk", 0}, omega, a.trunc, a.trunc, a.digits);
  } else {
    const CoeffGrid seed = io::read_grid_auto(a.seed_path);
    const int bits = BigFloat::bits_for_digits(a.digits);
    start = FloatGrid::zeros(a.trunc, a.trunc);
    for (long m = 0; m < std::min<long>(a.trunc, seed.modes_m()); ++m)
      for (long n = 0; n < std::min<long>(a.trunc, seed.modes_n()); ++n)
        start.c(m, n) = BigFloat::from_rational(seed.c(m, n), bits);
  }

  log.section("run");
  log.kv("command", std::string("find"));
  log.kv("omega", omega);
  log.kv("trunc", a.trunc);
  log.kv("digits", static_cast<long>(a.digits));
  log.kv("seed", a.seed_path.empty() ? std::string("trunk") : a.seed_path);

  const BranchPoint b = newton_solve(start, omega, opt);
  const CoeffGrid cand = rationalize_candidate(b, a.max_denom);
  io::write_grid(a.out_path, cand);
  log.kv("candidate_out", a.out_path);
  log.kv("newton_residual", b.newton_residual.str(6));
  log.kv("norm", b.norm.str(12));
  log.kv("max_denominator", static_cast<long>(a.max_denom));
  return 0;
}

struct SweepArgs {
  std::string omega_lo, omega_hi;
  long steps = 10;
  long trunc = 9;
  std::string out_path;
  int digits = 30;
  std::string tol = "1/10000000000";  // 10^-10
  std::string log_path;
};

int run_sweep(const SweepArgs& a) {
  LogSink sink;
  sink.out_path = a.log_path;
  io::ReportLog log(sink.buffer);
  const Rational lo = rational_arg(a.omega_lo, "--omega-lo");
  const Rational hi = rational_arg(a.omega_hi, "--omega-hi");
  const NewtonOptions opt = NewtonOptions::make(a.digits, rational_arg(a.tol, "--tol"));
  const auto fams = default_seed_families(a.trunc, a.trunc);

  log.section("run");
  log.kv("command", std::string("sweep"));
  log.kv("omega_lo", lo);
  log.kv("omega_hi", hi);
  log.kv("steps", a.steps);
  log.kv("trunc", a.trunc);

  const SweepResult res = sweep(lo, hi, a.steps, a.trunc, fams, opt);

  std::ofstream out(a.out_path);
  if (!out) throw std::runtime_error("cannot write " + a.out_path);
  out << "# omega  norm  branch_id  residual\n";
  for (const auto& e : res.points)
    out << e.point.omega.to_double() << "  " << e.point.norm.to_double() << "  " << e.branch_id
        << "  " << e.point.newton_residual.to_double() << "\n";
  log.kv("table_out", a.out_path);
  log.kv("points", static_cast<long>(res.points.size()));
  log.kv("gaps", static_cast<long>(res.gaps.size()));
  for (const auto& g : res.gaps)
    log.kv("gap", g.branch_id + " at omega = " + g.omega.str() + ": " + g.reason);
  return res.points.empty() ? 1 : 0;
}

struct DistinctArgs {
  std::vector<std::string> manifests;
  unsigned jobs = hardware_workers();
  std::string log_path;
};

int run_distinct(const DistinctArgs& a) {
  LogSink sink;
  sink.out_path = a.log_path;
  io::ReportLog log(sink.buffer);
  log.section("run");
  log.kv("command", std::string("distinct"));

  std::vector<Certificate> certs;
  std::vector<Rational> epsilons;
  for (const auto& path : a.manifests) {
    const io::Manifest man = io::read_manifest(path);
    if (!man.k0 || !man.delta)
      throw std::invalid_argument(path + ": distinct requires k0 and delta in each manifest");
    Certificate cert = io::manifest_to_certificate(man, *man.k0, *man.delta, "");
    Rational eps;
    if (man.epsilon) {
      // pre-verified radius; the pairwise check only needs u0 and epsilon
      eps = *man.epsilon;
      log.kv("epsilon_source[" + cert.label + "]", std::string("manifest"));
    } else {
      const VerificationOutcome out = verify(cert, a.jobs);
      if (!out.accepted)
        throw std::runtime_error(path + ": certificate rejected: " + out.failure_reason);
      eps = out.epsilon;
      log.kv("epsilon_source[" + cert.label + "]", std::string("verified"));
    }
    log.kv("epsilon[" + cert.label + "]", eps, 6);
    certs.push_back(std::move(cert));
    epsilons.push_back(std::move(eps));
  }
  const NormWeights& w = certs.empty() ? NormWeights::defaults() : certs.front().weights;
  std::vector<const Certificate*> ptrs;
  for (const auto& c : certs) ptrs.push_back(&c);
  const DistinctnessReport rep = distinctness(ptrs, epsilons, w);

  log.section("pairs");
  for (const auto& p : rep.pairs) {
    const std::string tag =
        "(" + certs[p.i].label + ", " + certs[p.j].label + ")";
    log.kv("diff_norm" + tag, p.diff_norm, 9);
    log.kv("sum_norm" + tag, p.sum_norm, 9);
    log.kv("threshold" + tag, p.threshold, 9);
    log.kv("distinct" + tag, p.distinct);
  }
  log.kv("all_distinct", rep.all_distinct);
  return rep.all_distinct ? 0 : 1;
}

// --- oracle suites --------------------------------------------------------------

struct OracleArgs {
  std::string suite = "all";
  long grids = 50;
  std::uint64_t seed = 2025;
  std::string log_path;
};

struct OracleRng {
  std::uint64_t state;
  explicit OracleRng(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational() { return Rational(range(-12, 12), range(1, 16)); }
  CoeffGrid grid(long M, long N) {
    auto g = CoeffGrid::zeros(M, N);
    for (long m = 0; m < M; ++m)
      for (long n = 0; n < N; ++n) g.c(m, n) = rational();
    return g;
  }
};

bool grids_match(const CoeffGrid& a, const CoeffGrid& b) {
  const long M = std::max(a.modes_m(), b.modes_m());
  const long N = std::max(a.modes_n(), b.modes_n());
  const CoeffGrid pa = padded(a, M, N), pb = padded(b, M, N);
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n)
      if (!(pa.c(m, n) == pb.c(m, n))) return false;
  return true;
}

bool oracle_conv(io::ReportLog& log, OracleRng& rng, long grids) {
  long fails = 0;
  for (long i = 0; i < grids; ++i) {
    const long M = rng.range(1, 4), N = rng.range(1, 4);
    const CoeffGrid u = rng.grid(M, N);
    const auto poly = oracle::TrigPoly::from_odd_grid(u);
    const auto sq = (poly * poly).to_even_grid();
    if (!sq) { ++fails; continue; }
    const auto d = square(u);
    bool ok = true;
    for (long m = 0; m < std::max(d.d.rows(), sq->d.rows()) && ok; ++m)
      for (long n = 0; n < std::max(d.d.cols(), sq->d.cols()) && ok; ++n) {
        const Rational a = (m < d.d.rows() && n < d.d.cols()) ? d.d(m, n) : Rational(0);
        const Rational b = (m < sq->d.rows() && n < sq->d.cols()) ? sq->d(m, n) : Rational(0);
        ok = a == b;
      }
    const auto cb = (poly * poly * poly).to_odd_grid();
    ok = ok && cb && grids_match(cube(u), *cb);
    const long bm = rng.range(0, 4), bn = rng.range(0, 4);
    const auto mb = (poly * poly * oracle::TrigPoly::basis(bm, bn)).to_odd_grid();
    ok = ok && mb && grids_match(mult_by_basis(square(u), bm, bn), *mb);
    if (!ok) ++fails;
  }
  log.kv("conv_grids", grids);
  log.kv("conv_failures", fails);
  return fails == 0;
}

bool oracle_lemmas(io::ReportLog& log, OracleRng& rng, long grids) {
  const Frequency freq(34, 20);
  const NormWeights w = NormWeights::defaults();
  long fails = 0;
  for (long m = 0; m <= 50; ++m)
    for (long n = 0; n <= 50; ++n)
      if (!(abs(linv_coeff(freq, m, n)) <= phi(freq, m, n))) ++fails;
  log.kv("linv_phi_failures", fails);

  long tfails = 0;
  for (long i = 0; i < grids; ++i) {
    const CoeffGrid u = rng.grid(rng.range(1, 3), rng.range(1, 3));
    const CoeffGrid v = rng.grid(rng.range(1, 3), rng.range(1, 3));
    const CoeffGrid z = rng.grid(rng.range(1, 3), rng.range(1, 3));
    const auto prod = (oracle::TrigPoly::from_odd_grid(u) * oracle::TrigPoly::from_odd_grid(v) *
                       oracle::TrigPoly::from_odd_grid(z))
                          .to_odd_grid();
    if (!prod ||
        !(weighted_norm(*prod, w) <= weighted_norm(u, w) * weighted_norm(v, w) * weighted_norm(z, w)))
      ++tfails;
  }
  log.kv("triple_product_failures", tfails);

  long lfails = 0;
  for (long i = 0; i < 20; ++i) {
    const long M = rng.range(1, 2), N = rng.range(1, 2);
    const CoeffGrid u = rng.grid(M, N);
    const long Mh = 2 * M - 1, Nh = 2 * N - 1;
    const auto ctil = mult_by_basis(square(u), Mh, Nh);
    Rational sum(0);
    for (long a = 0; a < ctil.modes_m(); ++a)
      for (long b = 0; b < ctil.modes_n(); ++b) sum += abs(ctil.c(a, b));
    const long mt = Mh + rng.range(0, 4), nt = rng.range(0, Nh);
    const Rational direct =
        weighted_norm(apply_linv(mult_by_basis(square(u), mt, nt), freq), w);
    const Rational bound = phi(freq, mt - Mh, 0) *
                           pow(w.rho_tau, static_cast<unsigned long>(2 * (Mh + mt) + 1)) *
                           pow(w.rho_x, static_cast<unsigned long>(2 * (Nh + nt) + 1)) * sum;
    if (!(direct <= bound)) ++lfails;
  }
  log.kv("tail_bound_failures", lfails);
  return fails == 0 && tfails == 0 && lfails == 0;
}

bool oracle_h0(io::ReportLog& log, OracleRng& rng) {
  const Frequency freq(34, 20);
  const NormWeights w = NormWeights::defaults();
  long fails = 0;
  for (int trial = 0; trial < 3; ++trial) {
    CoeffGrid u = rng.grid(1, 1);
    u.c(0, 0) = u.c(0, 0) / Rational(6);
    TruncationSpec t;
    t.M = t.N = 1;
    t.mu = t.nu = 2;
    t.Mtilde = t.Ntilde = select_mtilde_minimal(u, freq, w, 2, 2);
    AcalMatrix a = AcalMatrix::identity(4);
    for (long i = 0; i < 4; ++i)
      for (long j = 0; j < 4; ++j) a.m(i, j) += Rational(rng.range(-2, 2), rng.range(5, 9));
    H0Options opt;
    opt.workers = 2;
    const H0Bound b = bound_h0_norm(u, a, freq, w, t, opt);
    const CoeffGrid h = rng.grid(2, 2);
    const CoeffGrid ah = apply_A(a, h, t);
    const auto p = oracle::TrigPoly::from_odd_grid(u);
    const auto prod = (p * p * oracle::TrigPoly::from_odd_grid(ah)).to_odd_grid();
    if (!prod) { ++fails; continue; }
    CoeffGrid h0h = apply_linv(*prod, freq);
    for (long m = 0; m < h0h.modes_m(); ++m)
      for (long n = 0; n < h0h.modes_n(); ++n) h0h.c(m, n) *= Rational(-3);
    h0h = grid_sum(h0h, h);
    h0h = grid_diff(h0h, ah);
    if (!(weighted_norm(h0h, w) <= b.bound * weighted_norm(h, w))) ++fails;
  }
  log.kv("h0_failures", fails);
  return fails == 0;
}

bool oracle_index(io::ReportLog& log) {
  long fails = 0;
  for (long J = 0; J < 1000000; ++J) {
    const auto [m, n] = j_inverse(J);
    if (j_index(m, n) != J) ++fails;
  }
  for (long m = 0; m < 1000; ++m)
    for (long n = 0; n < 1000; ++n) {
      const auto [mi, ni] = j_inverse(j_index(m, n));
      if (mi != m || ni != n) ++fails;
    }
  log.kv("index_failures", fails);
  return fails == 0;
}

int run_oracle(const OracleArgs& a) {
  LogSink sink;
  sink.out_path = a.log_path;
  io::ReportLog log(sink.buffer);
  log.section("run");
  log.kv("command", std::string("oracle"));
  log.kv("suite", a.suite);
  log.kv("seed", static_cast<long>(a.seed));
  OracleRng rng(a.seed);
  bool ok = true;
  bool matched = false;
  if (a.suite == "conv" || a.suite == "all") {
    ok = oracle_conv(log, rng, a.grids) && ok;
    matched = true;
  }
  if (a.suite == "lemmas" || a.suite == "all") {
    ok = oracle_lemmas(log, rng, a.grids) && ok;
    matched = true;
  }
  if (a.suite == "h0" || a.suite == "all") {
    ok = oracle_h0(log, rng) && ok;
    matched = true;
  }
  if (a.suite == "index" || a.suite == "all") {
    ok = oracle_index(log) && ok;
    matched = true;
  }
  if (!matched) throw CLI::ValidationError("--suite", "unknown suite '" + a.suite + "'");
  log.kv("oracle_passed", ok);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified time-periodic solutions of the 1D cubic wave equation"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "check a certificate manifest exactly");
  verify_cmd->add_option("--manifest", va.manifest, "certificate manifest path")->required();
  verify_cmd->add_option("--jobs", va.jobs, "worker threads");
  verify_cmd->add_option("--log", va.log_path, "also write the run log here");

  BuildAcalArgs ba;
  auto* build_cmd = app.add_subcommand("build-acal", "assemble and invert the Acal block");
  build_cmd->add_option("--u0", ba.u0_path, "candidate grid path")->required();
  build_cmd->add_option("--omega", ba.omega, "frequency as (2p+1)/(2q)")->required();
  build_cmd->add_option("--mu", ba.mu, "block truncation (start value with --select-mu)")
      ->required();
  build_cmd->add_option("--digits", ba.digits, "inversion precision (decimal digits)");
  build_cmd->add_option("--max-denom", ba.max_denom, "rationalization denominator cap");
  build_cmd->add_option("--out", ba.out_path, "output matrix path")->required();
  build_cmd->add_flag("--select-mu", ba.select_mu,
                      "raise mu until the certificate closes (writes the selected block)");
  build_cmd->add_option("--mu-cap", ba.mu_cap, "largest mu the selection loop may try");
  build_cmd->add_option("--emit-manifest", ba.emit_manifest,
                        "write a ready-to-verify manifest (with --select-mu)");
  build_cmd->add_option("--label", ba.label, "certificate label");
  build_cmd->add_option("--jobs", ba.jobs, "worker threads");
  build_cmd->add_option("--log", ba.log_path, "also write the run log here");

  FindArgs fa;
  auto* find_cmd = app.add_subcommand("find", "Newton candidate at a fixed frequency");
  find_cmd->add_option("--omega", fa.omega, "frequency as a rational")->required();
  find_cmd->add_option("--trunc", fa.trunc, "truncation M = N")->required();
  find_cmd->add_option("--seed", fa.seed_path, "seed grid path (default: trunk seed)");
  find_cmd->add_option("--digits", fa.digits, "Newton working precision");
  find_cmd->add_option("--tol", fa.tol, "residual tolerance (rational)");
  find_cmd->add_option("--max-denom", fa.max_denom, "candidate rationalization cap");
  find_cmd->add_option("--out", fa.out_path, "candidate grid output path")->required();
  find_cmd->add_option("--log", fa.log_path, "also write the run log here");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "frequency sweep over seed families");
  sweep_cmd->add_option("--omega-lo", sa.omega_lo, "lower frequency (rational)")->required();
  sweep_cmd->add_option("--omega-hi", sa.omega_hi, "upper frequency (rational)")->required();
  sweep_cmd->add_option("--steps", sa.steps, "number of steps")->required();
  sweep_cmd->add_option("--trunc", sa.trunc, "truncation M = N")->required();
  sweep_cmd->add_option("--out", sa.out_path, "branch table output path")->required();
  sweep_cmd->add_option("--digits", sa.digits, "Newton working precision");
  sweep_cmd->add_option("--tol", sa.tol, "residual tolerance (rational)");
  sweep_cmd->add_option("--log", sa.log_path, "also write the run log here");

  DistinctArgs da;
  auto* dist_cmd = app.add_subcommand("distinct", "pairwise separation of certificates");
  dist_cmd->add_option("--manifests", da.manifests, "manifest paths")
      ->required()
      ->expected(-1);
  dist_cmd->add_option("--jobs", da.jobs, "worker threads");
  dist_cmd->add_option("--log", da.log_path, "also write the run log here");

  OracleArgs oa;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force self-check suites");
  oracle_cmd->add_option("--suite", oa.suite, "conv | lemmas | h0 | index | all");
  oracle_cmd->add_option("--grids", oa.grids, "random grids per suite");
  oracle_cmd->add_option("--seed", oa.seed, "rng seed");
  oracle_cmd->add_option("--log", oa.log_path, "also write the run log here");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*verify_cmd) return run_verify(va);
    if (*build_cmd) return run_build_acal(ba);
    if (*find_cmd) return run_find(fa);
    if (*sweep_cmd) return run_sweep(sa);
    if (*dist_cmd) return run_distinct(da);
    if (*oracle_cmd) return run_oracle(oa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
