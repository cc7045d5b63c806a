#include "wavecert/operators.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "wavecert/parallel.hpp"

namespace wavecert {

void TruncationSpec::validate() const {
  if (M < 1 || N < 1) throw std::invalid_argument("TruncationSpec: M, N >= 1 required");
  if (mu < 1 || nu < 1) throw std::invalid_argument("TruncationSpec: mu, nu >= 1 required");
  if (mu != nu) throw std::invalid_argument("TruncationSpec: mu == nu required");
  if (Mtilde < std::max(mu, 2 * M - 1) || Ntilde < std::max(nu, 2 * N - 1))
    throw std::invalid_argument(
        "TruncationSpec: Mtilde >= max(mu, 2M-1) and Ntilde >= max(nu, 2N-1) required");
}

AcalMatrix::AcalMatrix(RationalMatrix mat) : m(std::move(mat)) {
  if (m.rows() != m.cols()) throw std::invalid_argument("AcalMatrix: square matrix required");
}

AcalMatrix AcalMatrix::identity(long dim) {
  AcalMatrix a;
  a.m = RationalMatrix::Constant(dim, dim, Rational(0));
  for (long i = 0; i < dim; ++i) a.m(i, i) = Rational(1);
  return a;
}

long AcalMatrix::mu() const {
  const long d = dim();
  long r = static_cast<long>(std::sqrt(static_cast<double>(d)));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  if (r * r != d) throw std::invalid_argument("AcalMatrix: dimension must be mu^2");
  return r;
}

// --- L^{-1}, phi --------------------------------------------------------------

Rational linv_coeff(const Frequency& freq, long m, long n) {
  const Rational t = Rational(2 * freq.q) * Rational(2 * n + 1);
  const Rational s = Rational(2 * freq.p + 1) * Rational(2 * m + 1);
  const Rational fourq2 = Rational(2 * freq.q) * Rational(2 * freq.q);
  return fourq2 / (t * t - s * s);
}

Rational phi(const Frequency& freq, long m, long n) {
  const Rational t = Rational(2 * freq.q) * Rational(2 * n + 1);
  const Rational s = Rational(2 * freq.p + 1) * Rational(2 * m + 1);
  const Rational fourq2 = Rational(2 * freq.q) * Rational(2 * freq.q);
  const Rational mx = t > s ? t : s;
  return fourq2 / (Rational(2) * mx - Rational(1));
}

Rational linv_sup_norm(const Frequency& freq) {
  // Diagonal operator: the norm is sup |linv_coeff|. For fixed m the sup over
  // n sits where 2q(2n+1) is closest to (2p+1)(2m+1); rows with
  // phi(m,0) <= best reached so far cannot improve, and phi(m,0) -> 0.
  Rational best = abs(linv_coeff(freq, 0, 0));
  for (long m = 0;; ++m) {
    if (m > 0 && !(phi(freq, m, 0) > best)) break;
    const long s = (2 * freq.p + 1) * (2 * m + 1);
    const long n0 = ((s / (2 * freq.q)) - 1) / 2;
    for (long n = std::max(0L, n0 - 2); n <= n0 + 2; ++n) {
      const Rational v = abs(linv_coeff(freq, m, n));
      if (v > best) best = v;
    }
  }
  return best;
}

CoeffGrid apply_linv(const CoeffGrid& v, const Frequency& freq) {
  auto out = CoeffGrid::zeros(v.modes_m(), v.modes_n());
  for (long m = 0; m < v.modes_m(); ++m)
    for (long n = 0; n < v.modes_n(); ++n)
      if (!v.c(m, n).is_zero()) out.c(m, n) = v.c(m, n) * linv_coeff(freq, m, n);
  return out;
}

// --- A ------------------------------------------------------------------------

CoeffGrid apply_A(const AcalMatrix& acal, const CoeffGrid& v, const TruncationSpec& t) {
  t.validate();
  if (acal.dim() != t.block_dim())
    throw std::invalid_argument("apply_A: Acal dimension does not match mu*nu");
  const long Mo = std::max(v.modes_m(), static_cast<Eigen::Index>(t.mu));
  const long No = std::max(v.modes_n(), static_cast<Eigen::Index>(t.nu));
  auto out = CoeffGrid::zeros(Mo, No);
  for (long m = 0; m < v.modes_m(); ++m)
    for (long n = 0; n < v.modes_n(); ++n) {
      if (v.c(m, n).is_zero()) continue;
      if (m >= t.mu || n >= t.nu) {
        out.c(m, n) = v.c(m, n);  // identity block
        continue;
      }
      const long K = j_index(m, n);
      for (long J = 0; J < acal.dim(); ++J) {
        if (acal.m(J, K).is_zero()) continue;
        const auto [mj, nj] = j_inverse(J);
        out.c(mj, nj) += acal.m(J, K) * v.c(m, n);
      }
    }
  return out;
}

Rational bound_A_norm(const AcalMatrix& acal, const NormWeights& w) {
  const long mu = acal.mu();
  const auto pt = power_table(w.rho_tau, 2 * mu - 1);
  const auto px = power_table(w.rho_x, 2 * mu - 1);
  auto rho = [&](long J) {
    const auto [m, n] = j_inverse(J);
    return pt[2 * m + 1] * px[2 * n + 1];
  };
  Rational best(1);
  for (long K = 0; K < acal.dim(); ++K) {
    std::vector<Rational> terms;
    terms.reserve(acal.dim());
    for (long J = 0; J < acal.dim(); ++J)
      if (!acal.m(J, K).is_zero()) terms.push_back(rho(J) * abs(acal.m(J, K)));
    const Rational col = tree_sum(terms) / rho(K);
    if (col > best) best = col;
  }
  return best;
}

// --- N_Omega(0) ------------------------------------------------------------------

Rational norm_N0(const CoeffGrid& u0, const Frequency& freq, const NormWeights& w) {
  const auto f = cube(u0);
  auto r = CoeffGrid::zeros(f.modes_m(), f.modes_n());
  for (long m = 0; m < f.modes_m(); ++m)
    for (long n = 0; n < f.modes_n(); ++n)
      if (!f.c(m, n).is_zero()) r.c(m, n) = -(f.c(m, n) * linv_coeff(freq, m, n));
  r = grid_diff(r, u0);
  return weighted_norm(r, w);
}

// --- tail constant ----------------------------------------------------------------

Rational tail_constant_C(const SquareGrid& u0sq, const NormWeights& w) {
  const long M = u0sq.d.rows() / 2, N = u0sq.d.cols() / 2;
  const auto ctil = mult_by_basis(u0sq, 2 * M - 1, 2 * N - 1);
  std::vector<Rational> terms;
  terms.reserve(static_cast<std::size_t>(ctil.modes_m()) * ctil.modes_n());
  for (long m = 0; m < ctil.modes_m(); ++m)
    for (long n = 0; n < ctil.modes_n(); ++n)
      if (!ctil.c(m, n).is_zero()) terms.push_back(abs(ctil.c(m, n)));
  const Rational sum = tree_sum(terms);
  return Rational(3) * pow(w.rho_tau, static_cast<unsigned long>(4 * M - 2)) *
         pow(w.rho_x, static_cast<unsigned long>(4 * N - 2)) * sum;
}

Rational tail_constant_C(const CoeffGrid& u0, const NormWeights& w) {
  return tail_constant_C(square(u0), w);
}

// --- Mtilde selection ----------------------------------------------------------------

namespace {
long select_mtilde_impl(const CoeffGrid& u0, const Frequency& freq, const NormWeights& w,
                        long mu, long nu, const Rational& ceiling, bool strict_one) {
  const long M = u0.modes_m(), N = u0.modes_n();
  const Rational C = tail_constant_C(u0, w);
  long T = std::max({mu, nu, 2 * M - 1, 2 * N - 1});
  const long cap = 100000;
  for (; T <= cap; ++T) {
    const Rational tm = phi(freq, T - (2 * M - 1), 0) * C;
    const Rational tn = phi(freq, 0, T - (2 * N - 1)) * C;
    if (strict_one) {
      if (tm < Rational(1) && tn < Rational(1)) return T;
    } else {
      if (tm <= ceiling && tn <= ceiling) return T;
    }
  }
  throw std::runtime_error("select_mtilde: no admissible horizon below cap");
}
}  // namespace

long select_mtilde_minimal(const CoeffGrid& u0, const Frequency& freq, const NormWeights& w,
                           long mu, long nu) {
  return select_mtilde_impl(u0, freq, w, mu, nu, Rational(0), true);
}

long select_mtilde_below(const CoeffGrid& u0, const Frequency& freq, const NormWeights& w,
                         long mu, long nu, const Rational& ceiling) {
  if (!(ceiling > Rational(0)))
    return select_mtilde_minimal(u0, freq, w, mu, nu);
  const long tmin = select_mtilde_impl(u0, freq, w, mu, nu, Rational(0), true);
  const long text = select_mtilde_impl(u0, freq, w, mu, nu, ceiling, false);
  return std::max(tmin, text);
}

// --- H0 ---------------------------------------------------------------------------------

H0Workspace::H0Workspace(CoeffGrid u0_, AcalMatrix acal_, const Frequency& freq_,
                         NormWeights w_, const TruncationSpec& t_)
    : u0(std::move(u0_)),
      acal(std::move(acal_)),
      freq(freq_),
      w(std::move(w_)),
      trunc(t_),
      u0sq(square(u0)) {
  trunc.validate();
  if (acal.dim() != trunc.block_dim())
    throw std::invalid_argument("H0Workspace: Acal dimension does not match mu*nu");
  if (u0.modes_m() != trunc.M || u0.modes_n() != trunc.N)
    throw std::invalid_argument("H0Workspace: u0 dimensions do not match TruncationSpec");
  const long mu = trunc.mu;
  kmax = (2 * trunc.M + mu - 1) * (2 * trunc.M + mu - 1);
  // exponent span (in units of 2): outer columns need +-(2M-1)/(2N-1); inner
  // columns reach from -(mu-1) up to 2M+mu-2
  rel_lo = std::max({2 * trunc.M - 1, 2 * trunc.N - 1, mu - 1});
  const long rel_hi = std::max({2 * trunc.M - 1, 2 * trunc.N - 1,
                                2 * trunc.M + mu - 2, 2 * trunc.N + mu - 2});
  const Rational t2 = w.rho_tau * w.rho_tau;
  const Rational x2 = w.rho_x * w.rho_x;
  const auto tpos = power_table(t2, rel_hi);
  const auto xpos = power_table(x2, rel_hi);
  const auto tneg = power_table(t2.inverse(), rel_lo);
  const auto xneg = power_table(x2.inverse(), rel_lo);
  rel_tau.reserve(rel_lo + rel_hi + 1);
  rel_x.reserve(rel_lo + rel_hi + 1);
  for (long k = rel_lo; k >= 1; --k) {
    rel_tau.push_back(tneg[k]);
    rel_x.push_back(xneg[k]);
  }
  for (long k = 0; k <= rel_hi; ++k) {
    rel_tau.push_back(tpos[k]);
    rel_x.push_back(xpos[k]);
  }

  // common-denominator view of d
  {
    mpz_t lcm;
    mpz_init_set_ui(lcm, 1);
    for (long i = 0; i < u0sq.d.rows(); ++i)
      for (long j = 0; j < u0sq.d.cols(); ++j)
        mpz_lcm(lcm, lcm, mpq_denref(u0sq.d(i, j).raw()));
    d_den = Rational(0);
    mpz_set(mpq_numref(d_den.raw()), lcm);
    mpz_clear(lcm);
    d_int = DenseMatrix<Rational>::Constant(u0sq.d.rows(), u0sq.d.cols(), Rational(0));
    for (long i = 0; i < u0sq.d.rows(); ++i)
      for (long j = 0; j < u0sq.d.cols(); ++j) d_int(i, j) = u0sq.d(i, j) * d_den;
    g_scale = Rational(3) / (Rational(4) * d_den);
  }

  // linv over the full explicit window plus the convolution bandwidth
  {
    const long mrows = std::max(trunc.Mtilde + 2 * trunc.M - 1, 2 * trunc.M + mu - 1);
    const long ncols = std::max(trunc.Ntilde + 2 * trunc.N - 1, 2 * trunc.N + mu - 1);
    linv_cache = DenseMatrix<Rational>::Constant(mrows, ncols, Rational(0));
    linv_abs_cache = DenseMatrix<Rational>::Constant(mrows, ncols, Rational(0));
    for (long m = 0; m < mrows; ++m)
      for (long n = 0; n < ncols; ++n) {
        linv_cache(m, n) = linv_coeff(freq, m, n);
        linv_abs_cache(m, n) = abs(linv_cache(m, n));
      }
  }
}

Rational H0Workspace::g_int(long m, long n, long m2, long n2) const {
  Rational tot(0);
  const long as[3] = {m - m2, m2 - m, m + m2 + 1};
  const long bs[3] = {n - n2, n2 - n, n + n2 + 1};
  for (int i = 0; i < 3; ++i) {
    const long a = as[i];
    if (a < 0 || a >= d_int.rows()) continue;
    for (int j = 0; j < 3; ++j) {
      const long b = bs[j];
      if (b < 0 || b >= d_int.cols()) continue;
      if (j == 2)
        tot -= d_int(a, b);
      else
        tot += d_int(a, b);
    }
  }
  return tot;
}

Rational h0_column_norm_inner(const H0Workspace& ws, long J) {
  const long Jmu = ws.trunc.block_dim();
  if (J < 0 || J >= Jmu) throw std::domain_error("h0_column_norm_inner: J outside block");
  const long M = ws.trunc.M, N = ws.trunc.N;
  const auto [mJ, nJ] = j_inverse(J);

  // s_K = sum_{K2 < Jmu} Acal(K2, J) g^{K2}_K, accumulated over the common
  // denominator 4 d_den (the g stencil is a plain integer there)
  std::vector<Rational> s(static_cast<std::size_t>(ws.kmax), Rational(0));
  for (long K2 = 0; K2 < Jmu; ++K2) {
    const Rational& a = ws.acal.m(K2, J);
    if (a.is_zero()) continue;
    const auto [m2, n2] = j_inverse(K2);
    const long mlo = std::max(0L, m2 - (2 * M - 1)), mhi = m2 + 2 * M - 1;
    const long nlo = std::max(0L, n2 - (2 * N - 1)), nhi = n2 + 2 * N - 1;
    for (long m = mlo; m <= mhi; ++m)
      for (long n = nlo; n <= nhi; ++n) {
        const Rational g = ws.g_int(m2, n2, m, n);
        if (g.is_zero()) continue;
        s[static_cast<std::size_t>(j_index(m, n))] += a * g;
      }
  }

  std::vector<Rational> terms;
  terms.reserve(s.size());
  for (long K = 0; K < ws.kmax; ++K) {
    const auto [m, n] = j_inverse(K);
    Rational t(0);
    if (!s[static_cast<std::size_t>(K)].is_zero())
      t = -(s[static_cast<std::size_t>(K)] * ws.g_scale * ws.linv_cache(m, n));
    if (K < Jmu) {
      if (K == J) t += Rational(1);
      t -= ws.acal.m(K, J);
    }
    if (t.is_zero()) continue;
    terms.push_back(ws.rel_pow_tau(m - mJ) * ws.rel_pow_x(n - nJ) * abs(t));
  }
  return tree_sum(terms);
}

Rational h0_column_norm_outer(const H0Workspace& ws, long J) {
  const auto [m, n] = j_inverse(J);
  const long M = ws.trunc.M, N = ws.trunc.N;
  if (m < ws.trunc.mu && n < ws.trunc.nu)
    throw std::domain_error("h0_column_norm_outer: column lies in the Acal block");
  if (m >= ws.trunc.Mtilde || n >= ws.trunc.Ntilde)
    throw std::domain_error("h0_column_norm_outer: column beyond the explicit horizon");

  // A P_J = P_J here, so ||H0 P_J|| = 3 ||L^{-1}(u0^2 P_J)||. The sum over
  // the g band equals the spec's sum over J2 < (2M+max(m,n))^2: g vanishes
  // outside the band. The shared factor 3/(4 d_den) is applied once at the end.
  const long mlo = std::max(0L, m - (2 * M - 1)), mhi = m + 2 * M - 1;
  const long nlo = std::max(0L, n - (2 * N - 1)), nhi = n + 2 * N - 1;
  std::vector<Rational> terms;
  terms.reserve(static_cast<std::size_t>(mhi - mlo + 1) * static_cast<std::size_t>(nhi - nlo + 1));
  for (long m2 = mlo; m2 <= mhi; ++m2)
    for (long n2 = nlo; n2 <= nhi; ++n2) {
      const Rational g = ws.g_int(m, n, m2, n2);
      if (g.is_zero()) continue;
      terms.push_back(ws.rel_pow_tau(m2 - m) * ws.rel_pow_x(n2 - n) *
                      abs(g * ws.linv_abs_cache(m2, n2)));
    }
  return tree_sum(terms) * ws.g_scale;
}

namespace {

// Deterministic max over values computed in parallel; columns are evaluated
// in fixed waves so the probe's early exit is schedule-independent.
struct ColumnSweep {
  Rational max_value;
  long argmax = -1;
  bool aborted = false;
  long aborted_column = -1;
};

template <class Eval>
ColumnSweep sweep_columns(const std::vector<long>& cols, unsigned workers, bool abort_geq_one,
                          Eval&& eval) {
  ColumnSweep out;
  out.max_value = Rational(0);
  constexpr std::size_t kWave = 256;
  std::vector<Rational> vals;
  for (std::size_t base = 0; base < cols.size(); base += kWave) {
    const std::size_t count = std::min(kWave, cols.size() - base);
    vals.assign(count, Rational(0));
    parallel_for_index(count, workers,
                       [&](std::size_t i) { vals[i] = eval(cols[base + i]); });
    for (std::size_t i = 0; i < count; ++i) {
      if (out.argmax < 0 || vals[i] > out.max_value) {
        out.max_value = vals[i];
        out.argmax = cols[base + i];
      }
      if (abort_geq_one && !(vals[i] < Rational(1)) && !out.aborted) {
        out.aborted = true;
        out.aborted_column = cols[base + i];
      }
    }
    if (out.aborted) break;
  }
  return out;
}

}  // namespace

H0Bound bound_h0_norm(const CoeffGrid& u0, const AcalMatrix& acal, const Frequency& freq,
                      const NormWeights& w, const TruncationSpec& t, const H0Options& opt) {
  H0Workspace ws(u0, acal, freq, w, t);
  H0Bound out;

  const Rational C = tail_constant_C(ws.u0sq, w);
  out.tail_constant = C;
  out.tail_m = phi(freq, t.Mtilde - (2 * t.M - 1), 0) * C;
  out.tail_n = phi(freq, 0, t.Ntilde - (2 * t.N - 1)) * C;

  // Identity region first: in probe mode the near-resonant columns sit at
  // small J and fail fast.
  std::vector<long> outer_cols;
  const long horizon = std::max(t.Mtilde, t.Ntilde);
  const long outer_begin = std::max(t.block_dim(), opt.outer_begin);
  for (long J = outer_begin; J < horizon * horizon; ++J) {
    const auto [m, n] = j_inverse(J);
    if (m >= t.Mtilde || n >= t.Ntilde) continue;  // covered by the tail bounds
    if (m < t.mu && n < t.nu) continue;            // Acal block (J >= Jmu can't, but keep exact)
    outer_cols.push_back(J);
  }
  const auto outer = sweep_columns(outer_cols, opt.workers, opt.abort_when_geq_one,
                                   [&](long J) { return h0_column_norm_outer(ws, J); });
  out.outer_max = outer.max_value;
  out.worst_outer = {outer.argmax, outer.max_value};
  if (outer.aborted) {
    out.aborted = true;
    out.aborted_column = outer.aborted_column;
    out.bound = outer.max_value;  // partial; only the abort flag is meaningful
    return out;
  }

  if (!opt.skip_inner) {
    std::vector<long> inner_cols(static_cast<std::size_t>(t.block_dim()));
    for (long J = 0; J < t.block_dim(); ++J) inner_cols[static_cast<std::size_t>(J)] = J;
    const auto inner = sweep_columns(inner_cols, opt.workers, opt.abort_when_geq_one,
                                     [&](long J) { return h0_column_norm_inner(ws, J); });
    out.inner_max = inner.max_value;
    out.worst_inner = {inner.argmax, inner.max_value};
    if (inner.aborted) {
      out.aborted = true;
      out.aborted_column = inner.aborted_column;
      out.bound = inner.max_value;
      return out;
    }
  }

  out.bound = out.inner_max;
  if (out.outer_max > out.bound) out.bound = out.outer_max;
  if (out.tail_m > out.bound) out.bound = out.tail_m;
  if (out.tail_n > out.bound) out.bound = out.tail_n;
  if (opt.abort_when_geq_one && !(out.bound < Rational(1))) {
    out.aborted = true;
    out.aborted_column = -1;
  }
  return out;
}

BoundReport compute_bounds(const CoeffGrid& u0, const AcalMatrix& acal, const Frequency& freq,
                           const NormWeights& w, const TruncationSpec& t, unsigned workers) {
  BoundReport r;
  r.trunc = t;
  r.norm_u0 = weighted_norm(u0, w);
  r.bound_A = bound_A_norm(acal, w);
  r.norm_N0 = norm_N0(u0, freq, w);
  r.bound_Linv = linv_sup_norm(freq);
  r.phi00 = phi(freq, 0, 0);
  H0Options opt;
  opt.workers = workers;
  const H0Bound h0 = bound_h0_norm(u0, acal, freq, w, t, opt);
  r.bound_H0 = h0.bound;
  r.tail_constant = h0.tail_constant;
  r.tail_m = h0.tail_m;
  r.tail_n = h0.tail_n;
  r.worst_inner = h0.worst_inner;
  r.worst_outer = h0.worst_outer;
  return r;
}

}  // namespace wavecert
