#pragma once

#include <cmath>
#include <cstdint>

namespace qalign {

// Deterministic 64-bit generator (splitmix64 finalizer). Used everywhere in
// place of <random> engines so that seeded runs produce identical streams
// across platforms and standard-library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). Modulo bias is below 2^-32 for the n used here.
  std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

  bool coin() { return (next_u64() & 1ull) != 0; }

  // Standard normal, Box-Muller with a cached second deviate.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Counter-based seed split: child streams for restart/trial `index` are
// decorrelated from the master stream and from each other, so work items
// can run in any order (or in parallel) without changing results.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  return g.next_u64();
}

}  // namespace qalign
