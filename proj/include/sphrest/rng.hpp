#pragma once

#include <cstdint>

namespace sphrest {

// SplitMix64: 64-bit state, seedable, identical on every platform.  All
// stochastic output in the library derives from it, so runs are reproducible
// from (seed, n) alone.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1), never exactly 0 or 1
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    // standard normal via Box-Muller, one spare cached
    double gaussian();

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stream seed for one chunk of a partitioned computation.  Chunks are a fixed
// size independent of the worker count, so results do not depend on how many
// threads ran them.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t chunk);

inline constexpr long kChunkSize = 16384;

}  // namespace sphrest
