#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace jamsurv {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Splittable 64-bit generator: stream (seed, index) is a SplitMix64 sequence
/// started at a hashed offset, so substreams can be handed to workers in any
/// order. Satisfies UniformRandomBitGenerator.
class StreamRng {
public:
    using result_type = std::uint64_t;

    StreamRng(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform on (0, 1], 53-bit resolution.
    double uniform_open0() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

    /// Exp(rate) by inversion, -ln(U)/rate.
    double exponential(double rate) { return -std::log(uniform_open0()) / rate; }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

}  // namespace jamsurv
