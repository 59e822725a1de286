#pragma once

#include <cstdint>
#include <random>

namespace ttpred {

// splitmix64 step; decorrelates seeds derived from a master seed
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent stream for work item `salt` under a master seed. Parallel
// schedules that use one stream per item reproduce sequential results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    return mix_seed(master ^ mix_seed(salt));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace ttpred
