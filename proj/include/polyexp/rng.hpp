#pragma once

#include <cstdint>
#include <random>

namespace polyexp {

/// splitmix64 finalizer; scrambles a 64-bit word into a well-mixed seed.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the (master, run, substream) stream. Streams are independent of
/// evaluation order, so runs can be scheduled on any number of threads
/// without changing a single draw.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index,
                                    std::uint64_t substream) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL * (run_index + 1)));
  s = splitmix64(s ^ (0xbf58476d1ce4e5b9ULL * (substream + 1)));
  return s;
}

/// Within one run: who consumes which stream.
enum class Substream : std::uint64_t { Learner = 0, Adversary = 1, Setup = 2 };

/// Deterministic random stream. Doubles are produced from the top 53 bits of
/// the engine output, never through distribution objects, so sequences are
/// identical across standard library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// +1 or -1 with equal probability.
  double rademacher() { return (engine_() & 1ULL) != 0 ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

inline RngStream make_stream(std::uint64_t master_seed, std::uint64_t run_index, Substream sub) {
  return RngStream(derive_seed(master_seed, run_index, static_cast<std::uint64_t>(sub)));
}

}  // namespace polyexp
