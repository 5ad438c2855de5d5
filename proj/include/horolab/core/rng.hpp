#pragma once

#include <cstdint>

#include "horolab/core/rational.hpp"

namespace horolab {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, index), so parallel loops reproduce serial output.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ i);
  return splitmix64(h ^ j);
}

/// Uniform double in [0,1) with 53 random bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j = 0) {
  return static_cast<double>(counter_hash(seed, stream, i, j) >> 11) * 0x1.0p-53;
}

/// Sequential convenience wrapper over the counter scheme.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return counter_hash(seed_, stream_, counter_++); }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Integer uniform on [lo, hi].
  long long integer(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next_u64() % span);
  }
  /// Small random rational p/q with |p| <= pmax, 1 <= q <= qmax.
  Rational rational(long long pmax, long long qmax) {
    Rational r(static_cast<long>(integer(-pmax, pmax)), static_cast<long>(integer(1, qmax)));
    r.canonicalize();
    return r;
  }
  Rational nonzero_rational(long long pmax, long long qmax) {
    for (;;) {
      Rational r = rational(pmax, qmax);
      if (sgn(r) != 0) return r;
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace horolab
