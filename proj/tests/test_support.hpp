// Shared helpers for the unit suites: deterministic random rational grids and
// exact grid comparison with zero-padding.
#pragma once

#include <cstdint>

#include "wavecert/fourier.hpp"

namespace wavecert::testing {

// splitmix64; deterministic across platforms
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
 private:
  std::uint64_t state_;
};

inline Rational random_rational(Rng& rng) {
  const long num = rng.range(-12, 12);
  const long den = rng.range(1, 16);
  return Rational(num, den);
}

inline CoeffGrid random_grid(Rng& rng, long M, long N) {
  auto g = CoeffGrid::zeros(M, N);
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n) g.c(m, n) = random_rational(rng);
  return g;
}

inline bool grids_equal(const CoeffGrid& a, const CoeffGrid& b) {
  const long M = std::max(a.modes_m(), b.modes_m());
  const long N = std::max(a.modes_n(), b.modes_n());
  const CoeffGrid pa = padded(a, M, N), pb = padded(b, M, N);
  for (long m = 0; m < M; ++m)
    for (long n = 0; n < N; ++n)
      if (!(pa.c(m, n) == pb.c(m, n))) return false;
  return true;
}

}  // namespace wavecert::testing
