#ifndef STARGRAPH_RNG_HPP
#define STARGRAPH_RNG_HPP

#include <cstdint>
#include <random>

namespace stargraph {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer: decorrelates neighbouring seeds before they reach the engine.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream number `index` under `master_seed`. Streams depend only
/// on (seed, index), never on which worker draws them.
inline Engine make_stream(std::uint64_t master_seed, std::uint64_t index) {
  return Engine(mix64(mix64(master_seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace stargraph

#endif  // STARGRAPH_RNG_HPP
