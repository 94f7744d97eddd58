#pragma once

#include <cstdint>
#include <random>

namespace vixbns {

/// SplitMix64 finalizer; decorrelates (seed, block) pairs before they seed the engine.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for one block of paths: mt19937_64 seeded from (seed, block).
/// Results depend only on the block index, never on which thread runs it.
class BlockStream {
 public:
  BlockStream(std::uint64_t seed, std::uint64_t block)
      : engine_(splitmix64(splitmix64(seed) ^ (block + 0x632be59bd9b4e019ULL))) {}

  /// Uniform on the open interval (0, 1): (k + 1/2) 2^-53.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vixbns
