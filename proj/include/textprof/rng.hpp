#pragma once

#include <cstdint>
#include <vector>

namespace textprof {

// Deterministic pseudo-random generator used everywhere randomness is
// needed.  SplitMix64 is tiny, fast, and — unlike std::shuffle or the
// standard distributions — gives identical streams on every platform and
// standard library, which the reproducibility guarantees depend on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound).  Rejection sampling keeps the
  // distribution exact without relying on implementation-defined
  // std::uniform_int_distribution behaviour.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Fisher-Yates shuffle, spelled out so the permutation for a given seed
  // never changes between toolchains.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Stable derivation of a per-task seed from a base seed and an index,
// so independent runs draw from unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  Rng r(base ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
  return r.next();
}

}  // namespace textprof
