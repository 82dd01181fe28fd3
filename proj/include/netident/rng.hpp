#pragma once

#include <cstdint>
#include <random>

namespace netident {

// Deterministic uniform-double stream. std::uniform_real_distribution is
// implementation-defined, so doubles are derived from raw engine words to
// keep seeded runs bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform on [-span, -hole] ∪ [hole, span], never inside the hole.
  double uniform_excluding(double hole, double span) {
    const double magnitude = hole + (span - hole) * unit();
    return (eng_() & 1u) ? magnitude : -magnitude;
  }

 private:
  std::mt19937_64 eng_;
};

// Stable derived seed for an independent stream (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace netident
