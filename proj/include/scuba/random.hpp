#ifndef SCUBA_RANDOM_HPP
#define SCUBA_RANDOM_HPP

// Every stochastic decision in the library draws from std::mt19937_64, whose
// output sequence is fixed by the standard. The distribution helpers below are
// written out by hand because std::uniform_int_distribution is allowed to
// differ between standard library implementations.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>

#include "scuba/genotype.hpp"

namespace scuba {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection on the raw 64-bit output.
template <class Urbg>
std::uint64_t uniform_below(Urbg& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <class Urbg, class T>
const T& uniform_pick(Urbg& rng, std::span<const T> items) {
  return items[uniform_below(rng, items.size())];
}

template <class Urbg>
Genotype random_genotype(Urbg& rng, std::size_t length) {
  Genotype g(length);
  for (std::size_t i = 0; i < length; ++i) g.set(i, (rng() >> 63) != 0);
  return g;
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Order-sensitive combination of a base seed with a tuple of indices.
constexpr std::uint64_t stable_mix(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = mix64(base);
  for (auto p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace scuba

#endif  // SCUBA_RANDOM_HPP
