#pragma once

#include <cstdint>
#include <initializer_list>

namespace sgm {

/// SplitMix64 finalizer; used to derive independent seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix_seed(base);
  for (auto k : keys) h = mix_seed(h ^ mix_seed(k));
  return h;
}

}  // namespace sgm
