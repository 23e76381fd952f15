// Shared sample-point sets for pointwise residual sweeps: a 3^n regular grid
// on the torus plus 20 pseudo-random points from a fixed seed, so every
// reported residual is reproducible.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gcv {

// Default seed, recorded in every report header.
constexpr std::uint32_t kDefaultSeed = 0x6C5D;

using SamplePoint = std::vector<double>;

// Uniform double in [0, 1) from raw engine output; avoids the
// implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937& rng) {
  const std::uint64_t hi = rng();
  const std::uint64_t lo = rng();
  return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

// 3^dim grid at {0, 2pi/3, 4pi/3} per axis, then `extra` seeded random points.
std::vector<SamplePoint> sample_points(int dim, std::uint32_t seed = kDefaultSeed,
                                       int extra = 20);

// Random trig polynomial with |k_i| <= 2 and up to `max_terms` harmonics;
// used by the property tests.
class ScalarField;
ScalarField random_field(int dim, std::mt19937& rng, int max_terms = 4);

}  // namespace gcv
