#pragma once

#include <cmath>
#include <cstdint>

namespace ferrosim {

// SplitMix64. Used instead of <random> engines so that streams are
// reproducible across standard library implementations; simulation results
// for a given seed must not depend on the toolchain.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1]; never returns 0 so log() stays finite.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller. The second deviate of each pair is
  // discarded so the draw count per sample is fixed.
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_;
};

// Derives an independent child seed (e.g. one stream per design in a study).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return mix.next_u64();
}

}  // namespace ferrosim
