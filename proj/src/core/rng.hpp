#pragma once

#include <cstdint>
#include <random>

namespace ebel {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic substream keyed by (seed, stream). Replicate k of a Monte
// Carlo run uses stream k, so results do not depend on thread count or on how
// many variates other replicates consume. normal() costs exactly one engine
// step (inverse CDF), keeping streams count-stable.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream) {
        uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 0x632BE59BD9B4E019ULL));
        uint64_t w0 = splitmix64(s), w1 = splitmix64(s), w2 = splitmix64(s), w3 = splitmix64(s);
        std::seed_seq seq{static_cast<uint32_t>(w0), static_cast<uint32_t>(w0 >> 32),
                          static_cast<uint32_t>(w1), static_cast<uint32_t>(w1 >> 32),
                          static_cast<uint32_t>(w2), static_cast<uint32_t>(w2 >> 32),
                          static_cast<uint32_t>(w3), static_cast<uint32_t>(w3 >> 32)};
        eng_.seed(seq);
    }

    // Uniform on the open interval (0,1).
    double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal();

  private:
    std::mt19937_64 eng_;
};

}  // namespace ebel
