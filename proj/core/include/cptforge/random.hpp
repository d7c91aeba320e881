#pragma once

#include <cstdint>
#include <random>

namespace cptforge {

// Seedable, splittable generator. Streams derived with split() are
// independent of each other and of the parent; every draw is a pure
// function of (seed, stream path, draw index), so a fixed seed replays
// bit-identical streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard exponential by inversion.
  double exponential();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace cptforge
