#include "cptforge/random.hpp"

#include <cmath>

namespace cptforge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))), engine_(seed_) {}

Rng Rng::split(std::uint64_t stream) const { return Rng(seed_, stream + 1); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential() { return -std::log1p(-uniform()); }

}  // namespace cptforge
