// =============================================================================
// trig_expand.hpp
//
// Brute-force symbolic trigonometric algebra over the full lattice
//     {cos, sin}(a tau) x {cos, sin}(b x),  a, b >= 0,
// with exact rational coefficients. Products expand term-by-term through the
// product-to-sum identities, with no reference to the convolution formulas in
// fourier.hpp — this is the independent oracle those kernels are checked
// against (and the engine behind the `oracle` CLI command).
// =============================================================================
#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "wavecert/fourier.hpp"

namespace wavecert::oracle {

// One factor: cos(k a) when is_sin == false, sin(k a) when true.
struct Wave {
  long freq = 0;
  bool is_sin = false;

  friend auto operator<=>(const Wave&, const Wave&) = default;
};

struct TrigTerm {
  Wave tau;
  Wave x;

  friend auto operator<=>(const TrigTerm&, const TrigTerm&) = default;
};

class TrigPoly {
 public:
  TrigPoly() = default;

  static TrigPoly from_odd_grid(const CoeffGrid& v);   // P_{m,n} terms
  static TrigPoly from_even_grid(const SquareGrid& w); // cos cos terms
  static TrigPoly basis(long m, long n);               // P_{m,n}

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(const TrigPoly& o) const;
  TrigPoly scaled(const Rational& s) const;

  bool is_zero() const;

  // Collapse into a coefficient grid; nullopt if any term lies outside
  // the expected basis (that in itself is a failed parity check).
  std::optional<CoeffGrid> to_odd_grid() const;
  std::optional<SquareGrid> to_even_grid() const;

  const std::map<TrigTerm, Rational>& terms() const { return terms_; }

 private:
  void add_term(const TrigTerm& t, const Rational& c);
  std::map<TrigTerm, Rational> terms_;
};

// Triple product decomposed by the 16-term P-identity
//   P_a P_b P_c = (1/16) [ -P_{m1+m2+m3+1, n1+n2+n3+1} - ... ]
// with negative indices reflected; a second independent route to u*v*w.
CoeffGrid triple_product_by_identity(const CoeffGrid& u, const CoeffGrid& v,
                                     const CoeffGrid& w);

// v^2 P_{m,n} reconstructed from the (2M-1, 2N-1) anchor decomposition
//   v^2 P_{m,n} = sum ctil_{mh,nh} P_{mh+m-(2M-1), nh+n-(2N-1)}
// with reflections; the anchor coefficients ctil are obtained from the trig
// oracle, not from the g stencil.
CoeffGrid shifted_mult_by_basis(const CoeffGrid& v, long m, long n);

}  // namespace wavecert::oracle
