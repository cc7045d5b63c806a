#include "wavecert/trig_expand.hpp"

namespace wavecert::oracle {
namespace {

struct SignedWave {
  Wave w;
  int sign = 1;   // accounts for sin(-k) = -sin(k)
  bool zero = false;  // sin(0) = 0
};

SignedWave normalize(long freq, bool is_sin) {
  SignedWave s;
  s.w.is_sin = is_sin;
  if (freq < 0) {
    freq = -freq;
    if (is_sin) s.sign = -1;
  }
  s.w.freq = freq;
  if (is_sin && freq == 0) s.zero = true;
  return s;
}

// Product of two single-variable factors as two signed halves:
//   cos A cos B = 1/2 [cos(A-B) + cos(A+B)]
//   sin A sin B = 1/2 [cos(A-B) - cos(A+B)]
//   sin A cos B = 1/2 [sin(A+B) + sin(A-B)]
//   cos A sin B = 1/2 [sin(A+B) - sin(A-B)]
struct HalfPair {
  SignedWave first, second;
  int second_sign = 1;
};

HalfPair wave_product(const Wave& a, const Wave& b) {
  HalfPair h;
  if (!a.is_sin && !b.is_sin) {
    h.first = normalize(a.freq - b.freq, false);
    h.second = normalize(a.freq + b.freq, false);
  } else if (a.is_sin && b.is_sin) {
    h.first = normalize(a.freq - b.freq, false);
    h.second = normalize(a.freq + b.freq, false);
    h.second_sign = -1;
  } else if (a.is_sin && !b.is_sin) {
    h.first = normalize(a.freq + b.freq, true);
    h.second = normalize(a.freq - b.freq, true);
  } else {  // cos * sin
    h.first = normalize(a.freq + b.freq, true);
    h.second = normalize(a.freq - b.freq, true);
    h.second_sign = -1;
  }
  return h;
}

}  // namespace

void TrigPoly::add_term(const TrigTerm& t, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TrigPoly TrigPoly::from_odd_grid(const CoeffGrid& v) {
  TrigPoly p;
  for (long m = 0; m < v.modes_m(); ++m)
    for (long n = 0; n < v.modes_n(); ++n)
      p.add_term({{2 * m + 1, false}, {2 * n + 1, true}}, v.c(m, n));
  return p;
}

TrigPoly TrigPoly::from_even_grid(const SquareGrid& w) {
  TrigPoly p;
  for (long m = 0; m < w.d.rows(); ++m)
    for (long n = 0; n < w.d.cols(); ++n)
      p.add_term({{2 * m, false}, {2 * n, false}}, w.d(m, n));
  return p;
}

TrigPoly TrigPoly::basis(long m, long n) {
  CoeffGrid g = CoeffGrid::zeros(m + 1, n + 1);
  g.c(m, n) = Rational(1);
  return from_odd_grid(g);
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  TrigPoly p = *this;
  for (const auto& [t, c] : o.terms_) p.add_term(t, c);
  return p;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
  TrigPoly p = *this;
  for (const auto& [t, c] : o.terms_) p.add_term(t, -c);
  return p;
}

TrigPoly TrigPoly::scaled(const Rational& s) const {
  TrigPoly p;
  if (s.is_zero()) return p;
  for (const auto& [t, c] : terms_) p.add_term(t, c * s);
  return p;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
  TrigPoly p;
  const Rational quarter(1, 4);
  for (const auto& [ta, ca] : terms_) {
    for (const auto& [tb, cb] : o.terms_) {
      const Rational c4 = ca * cb * quarter;
      const HalfPair ht = wave_product(ta.tau, tb.tau);
      const HalfPair hx = wave_product(ta.x, tb.x);
      const SignedWave tparts[2] = {ht.first, ht.second};
      const int tsigns[2] = {1, ht.second_sign};
      const SignedWave xparts[2] = {hx.first, hx.second};
      const int xsigns[2] = {1, hx.second_sign};
      for (int i = 0; i < 2; ++i) {
        if (tparts[i].zero) continue;
        for (int j = 0; j < 2; ++j) {
          if (xparts[j].zero) continue;
          const int sg = tsigns[i] * tparts[i].sign * xsigns[j] * xparts[j].sign;
          Rational coeff = c4;
          if (sg < 0) coeff = -coeff;
          p.add_term({tparts[i].w, xparts[j].w}, coeff);
        }
      }
    }
  }
  return p;
}

bool TrigPoly::is_zero() const { return terms_.empty(); }

std::optional<CoeffGrid> TrigPoly::to_odd_grid() const {
  long M = 1, N = 1;
  for (const auto& [t, c] : terms_) {
    if (t.tau.is_sin || !t.x.is_sin) return std::nullopt;
    if (t.tau.freq % 2 == 0 || t.x.freq % 2 == 0) return std::nullopt;
    M = std::max(M, (t.tau.freq - 1) / 2 + 1);
    N = std::max(N, (t.x.freq - 1) / 2 + 1);
  }
  auto g = CoeffGrid::zeros(M, N);
  for (const auto& [t, c] : terms_) g.c((t.tau.freq - 1) / 2, (t.x.freq - 1) / 2) = c;
  return g;
}

std::optional<SquareGrid> TrigPoly::to_even_grid() const {
  long M = 1, N = 1;
  for (const auto& [t, c] : terms_) {
    if (t.tau.is_sin || t.x.is_sin) return std::nullopt;
    if (t.tau.freq % 2 != 0 || t.x.freq % 2 != 0) return std::nullopt;
    M = std::max(M, t.tau.freq / 2 + 1);
    N = std::max(N, t.x.freq / 2 + 1);
  }
  auto g = SquareGrid::zeros(M, N);
  for (const auto& [t, c] : terms_) g.d(t.tau.freq / 2, t.x.freq / 2) = c;
  return g;
}

CoeffGrid triple_product_by_identity(const CoeffGrid& u, const CoeffGrid& v,
                                     const CoeffGrid& w) {
  const long Mo = u.modes_m() + v.modes_m() + w.modes_m() - 1;
  const long No = u.modes_n() + v.modes_n() + w.modes_n() - 1;
  auto out = CoeffGrid::zeros(Mo, No);
  const Rational sixteenth(1, 16);
  auto put = [&](long m, long n, const Rational& c) {
    const auto r = reflect_index(m, n);
    Rational val = c;
    if (r.sign < 0) val = -val;
    out.c(r.m, r.n) += val;
  };
  for (long m1 = 0; m1 < u.modes_m(); ++m1)
    for (long n1 = 0; n1 < u.modes_n(); ++n1) {
      if (u.c(m1, n1).is_zero()) continue;
      for (long m2 = 0; m2 < v.modes_m(); ++m2)
        for (long n2 = 0; n2 < v.modes_n(); ++n2) {
          if (v.c(m2, n2).is_zero()) continue;
          for (long m3 = 0; m3 < w.modes_m(); ++m3)
            for (long n3 = 0; n3 < w.modes_n(); ++n3) {
              if (w.c(m3, n3).is_zero()) continue;
              const Rational base = u.c(m1, n1) * v.c(m2, n2) * w.c(m3, n3) * sixteenth;
              const long ms[4] = {m1 + m2 + m3 + 1, -m1 + m2 + m3, m1 - m2 + m3,
                                  m1 + m2 - m3};
              const long ns[4] = {n1 + n2 + n3 + 1, -n1 + n2 + n3, n1 - n2 + n3,
                                  n1 + n2 - n3};
              for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                  put(ms[i], ns[j], j == 0 ? -base : base);
            }
        }
    }
  return out;
}

CoeffGrid shifted_mult_by_basis(const CoeffGrid& v, long m, long n) {
  const long Mh = 2 * v.modes_m() - 1, Nh = 2 * v.modes_n() - 1;
  // anchor decomposition v^2 P_{Mh,Nh} via the trig oracle
  const TrigPoly vp = TrigPoly::from_odd_grid(v);
  const TrigPoly anchor = vp * vp * TrigPoly::basis(Mh, Nh);
  const auto ctil = anchor.to_odd_grid();
  if (!ctil) throw std::logic_error("shifted_mult_by_basis: anchor left the odd basis");
  auto out = CoeffGrid::zeros(2 * v.modes_m() + m, 2 * v.modes_n() + n);
  for (long mh = 0; mh <= 2 * Mh; ++mh)
    for (long nh = 0; nh <= 2 * Nh; ++nh) {
      if (mh >= ctil->modes_m() || nh >= ctil->modes_n()) continue;
      const Rational& coeff = ctil->c(mh, nh);
      if (coeff.is_zero()) continue;
      const auto r = reflect_index(mh + m - Mh, nh + n - Nh);
      Rational val = coeff;
      if (r.sign < 0) val = -val;
      out.c(r.m, r.n) += val;
    }
  return out;
}

}  // namespace wavecert::oracle
