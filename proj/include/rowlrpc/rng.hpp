#pragma once

#include <cstdint>
#include <random>

namespace rowlrpc {

// Deterministic random source. All randomness in the library flows through
// this class so that a (seed, stream index) pair fully determines results on
// every platform: mt19937_64 has a portable output sequence, and below() uses
// rejection sampling instead of modulo bias or distribution objects (whose
// output is implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}

  // Independent stream derived from (seed, index); used for per-trial streams.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed) ^ mix(0x9e3779b97f4a7c15ull * (index + 1)));
  }

  std::uint64_t next() { return eng_(); }

  // Uniform integer in [0, n). Unbiased via rejection.
  std::uint32_t below(std::uint32_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return static_cast<std::uint32_t>(v % n);
  }

private:
  // splitmix64 finalizer; decorrelates consecutive seeds/indices.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace rowlrpc
