// Deterministic random streams for the ensemble samplers.
//
// Each worker draws from std::mt19937_64, whose output sequence is fixed by
// the C++ standard, seeded with a SplitMix64 mix of (seed, worker index).
// Uniform variates are formed from the top 53 bits, so a given
// (seed, worker count) reproduces bit-identical statistics on any
// conforming standard library.

#pragma once

#include <cstdint>
#include <random>

namespace entswap {

/// One SplitMix64 step applied to `x`.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::uint64_t worker_stream_seed(std::uint64_t seed, unsigned worker) noexcept;

class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double next() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace entswap
