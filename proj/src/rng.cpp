#include "mdf/rng.hpp"

namespace mdf {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = mix64(seed);
  for (const std::uint64_t index : path) state = mix64(state ^ mix64(index + 0x632be59bd9b4e019ULL));
  return state;
}

Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  const std::uint64_t key = derive_seed(seed, path);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(mix64(key)), static_cast<std::uint32_t>(mix64(key) >> 32)};
  return Rng(seq);
}

}  // namespace mdf
