#pragma once

#include <cstdint>
#include <random>

namespace sobolhd {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter scheme used to fan one master seed out to per-symbol and per-trial
// streams: stream k gets splitmix64(master + k * golden-ratio increment).
inline uint64_t derive_seed(uint64_t master, uint64_t counter) {
    return splitmix64(master + counter * 0x9e3779b97f4a7c15ull);
}

// Uniform double in [0,1) from the top 53 bits; bit-stable across platforms,
// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace sobolhd
