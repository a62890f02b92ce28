#pragma once

#include <cstdint>

namespace lpplab {

/*
 * Handle for one reproducible random stream.
 *
 * Every sampling operation takes an RngSpec. Equal (master_seed, stream_index)
 * pairs reproduce the same draws bit-for-bit; distinct pairs give streams that
 * are independent for all practical purposes. Parallel replicas each own a
 * distinct stream_index, so results never depend on thread count or execution
 * order.
 */
struct RngSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    RngSpec stream(std::uint64_t index) const { return RngSpec{master_seed, index}; }
};

// SplitMix64 finalizer. Used only for seed mixing, never as the main generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/*
 * xoshiro256++ stream with documented seed mixing.
 *
 * State derivation: starting from state = master_seed, each key component
 * (stream_index, then the optional substream index) is absorbed by one
 * SplitMix64 step XORed with the component; four further SplitMix64 steps
 * emit the 256-bit engine state. Substreams are used for the independent
 * rows of one ensemble.
 */
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index,
              std::uint64_t substream = 0);
    explicit RngStream(const RngSpec& spec, std::uint64_t substream = 0)
        : RngStream(spec.master_seed, spec.stream_index, substream) {}

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double next_double();

    // Standard normal via the Marsaglia polar method (pairs, one cached).
    double next_gaussian();

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace lpplab
