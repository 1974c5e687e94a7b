#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace omsim {

// Derive a child stream seed from a base seed and a stream index.
// Golden-ratio mixing followed by a splitmix64 finalizer; distinct indices
// give statistically independent streams.
inline std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base ^ (index * 0x9E3779B97F4A7C15ULL);
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seedable random stream with platform-stable output.
//
// The engine is std::mt19937_64 (its sequence is fixed by the standard);
// all variate mappings are implemented here rather than with std::*_distribution,
// whose outputs are implementation-defined. Identical (seed, index) pairs
// therefore produce identical draw sequences everywhere.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : engine_(substream_seed(master_seed, stream_index)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). Multiply-shift mapping; bias is below
    // 2^-32 for the bounds used here.
    std::uint32_t uniform_u32(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Weibull lifetime by inverse transform: t = eta * (-ln u)^(1/beta), u in (0, 1].
    double weibull(double beta, double eta) {
        double u = 1.0 - uniform01();
        return eta * std::pow(-std::log(u), 1.0 / beta);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace omsim
