// Deterministic random source. splitmix64 is used directly instead of the
// <random> distributions so that generated models are byte-identical for a
// given seed on every platform and standard library.

#ifndef WCA_RNG_HPP
#define WCA_RNG_HPP

#include <cstdint>

namespace wca {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Modulo bias is negligible for the small n used here.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  // Uniform in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

private:
  std::uint64_t state_;
};

}  // namespace wca

#endif
