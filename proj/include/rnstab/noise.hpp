#pragma once

// Stateless, seeded noise: every draw is a pure function of
// (seed, lattice index, draw counter), so evaluation order and threading
// never change the bytes produced.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "rnstab/vector.hpp"

namespace rnstab {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::int64_t index) noexcept
      : key_(mix64(mix64(seed) ^ static_cast<std::uint64_t>(index))) {}

  std::uint64_t next_bits() noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() noexcept { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Direction uniform on the unit sphere of R^dim (normalized Box-Muller
/// normals) times a magnitude uniform in [0, amplitude).
inline Vector noise_vector(std::uint64_t seed, std::int64_t index, std::size_t dim,
                           double amplitude) {
  Vector v(dim);
  if (amplitude == 0.0) return v;
  NoiseStream stream(seed, index);
  for (std::size_t i = 0; i < dim; i += 2) {
    const double radius = std::sqrt(-2.0 * std::log1p(-stream.next_unit()));
    const double angle = 2.0 * std::numbers::pi * stream.next_unit();
    v[i] = radius * std::cos(angle);
    if (i + 1 < dim) v[i + 1] = radius * std::sin(angle);
  }
  const double len = norm(v);
  if (len == 0.0) {
    v = Vector::unit(dim, 0);
  } else {
    v *= 1.0 / len;
  }
  return v * (amplitude * stream.next_unit());
}

}  // namespace rnstab
