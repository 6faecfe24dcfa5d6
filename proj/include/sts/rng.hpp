#pragma once

#include <cstdint>
#include <random>

namespace sts {

using Rng = std::mt19937_64;

/// Purpose tags for replication substreams. Keeping instance draws, observation
/// noise and agent sampling on separate streams gives common random numbers
/// across algorithms that are compared on the same seed.
enum class StreamTag : std::uint64_t {
    Instance = 1,
    Noise = 2,
    Agent = 3,
    Horizon = 4,
};

std::uint64_t splitmix64(std::uint64_t x);

/// 64-bit key for substream (seed, replication, tag). Stable across platforms.
std::uint64_t substream_key(std::uint64_t seed, std::uint64_t replication, StreamTag tag);

/// Generator for substream (seed, replication, tag); independent of scheduling.
Rng make_stream(std::uint64_t seed, std::uint64_t replication, StreamTag tag);

}  // namespace sts
