#pragma once

#include <random>

#include "mcflab/core.hpp"

namespace mcflab {

/// Deterministic source of dyadic rationals. Coordinates are kept as integer
/// numerators over a common power-of-two denominator so that the subtractive
/// dynamics stays in plain big-integer arithmetic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Per-worker stream derived from a master seed (splitmix64 scramble).
  static Rng derived(std::uint64_t master, std::uint64_t worker) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (worker + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t bits64() { return eng_(); }

  /// Uniform integer in [0, 2^bits).
  Int dyadic(unsigned bits = 64) {
    Int v = 0;
    unsigned got = 0;
    while (got < bits) {
      unsigned take = std::min(64u, bits - got);
      std::uint64_t w = eng_();
      if (take < 64) w >>= (64 - take);
      v <<= take;
      v += w;
      got += take;
    }
    return v;
  }

  /// Uniform index in [0, m).
  std::size_t index(std::size_t m) {
    return static_cast<std::size_t>(eng_() % m);
  }

 private:
  std::mt19937_64 eng_;
};

inline constexpr unsigned kDefaultBits = 64;

/// Ordered point with n coordinates drawn uniformly from {0,...,2^bits - 1},
/// sorted ascending. A dyadic stand-in for Lebesgue sampling on the unit box.
inline Vec<Int> sample_ordered(Rng& rng, int n, unsigned bits = kDefaultBits) {
  Vec<Int> x(n);
  for (auto& v : x) v = rng.dyadic(bits);
  std::sort(x.begin(), x.end());
  return x;
}

/// Ordered point on the scaled simplex: coordinates sum to exactly 2^bits.
/// Spacings of n-1 sorted cut points, folded ascending.
inline Vec<Int> sample_simplex_ordered(Rng& rng, int n, unsigned bits = kDefaultBits) {
  Vec<Int> cuts(n - 1);
  for (auto& v : cuts) v = rng.dyadic(bits);
  std::sort(cuts.begin(), cuts.end());
  Vec<Int> x(n);
  Int prev = 0;
  for (int i = 0; i + 1 < n; ++i) {
    x[i] = cuts[i] - prev;
    prev = cuts[i];
  }
  x[n - 1] = pow2(bits) - prev;
  std::sort(x.begin(), x.end());
  return x;
}

/// Rejection sampling of an ordered point satisfying `pred`. Throws when the
/// acceptance rate collapses.
template <class Pred>
Vec<Int> sample_where(Rng& rng, int n, Pred&& pred,
                      unsigned bits = kDefaultBits,
                      long max_attempts = 20'000'000) {
  for (long i = 0; i < max_attempts; ++i) {
    Vec<Int> x = sample_ordered(rng, n, bits);
    if (pred(x)) return x;
  }
  throw resource_error("rejection sampling exceeded the attempt budget");
}

/// Sample from A. For b == 1 the set A is the null set {x_1 = ... = x_{n-1} = 0},
/// so those points are built directly.
inline Vec<Int> sample_in_A(Rng& rng, const MapParams& p,
                            unsigned bits = kDefaultBits) {
  if (p.b == 1) {
    Vec<Int> x(p.dim(), 0);
    x.back() = rng.dyadic(bits);
    return x;
  }
  return sample_where(rng, p.dim(), [&](const Vec<Int>& x) { return in_A(x, p); },
                      bits);
}

inline Vec<Int> sample_in_D(Rng& rng, const MapParams& p,
                            unsigned bits = kDefaultBits) {
  return sample_where(rng, p.dim(), [&](const Vec<Int>& x) { return in_D(x, p); },
                      bits);
}

inline Vec<Int> sample_in_cA(Rng& rng, const MapParams& p,
                             unsigned bits = kDefaultBits) {
  return sample_where(rng, p.dim(), [&](const Vec<Int>& x) { return !in_A(x, p); },
                      bits);
}

inline Vec<Int> sample_in_Theta(Rng& rng, const MapParams& p,
                                unsigned bits = kDefaultBits) {
  return sample_where(rng, p.dim(),
                      [&](const Vec<Int>& x) { return in_Theta(x, p); }, bits);
}

}  // namespace mcflab
