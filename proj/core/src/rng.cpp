#include "entswap/rng.hpp"

namespace entswap {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t worker_stream_seed(std::uint64_t seed, unsigned worker) noexcept {
    return splitmix64(splitmix64(seed) ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(worker) + 1)));
}

}  // namespace entswap
