#include "sts/rng.hpp"

#include <array>

namespace sts {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_key(std::uint64_t seed, std::uint64_t replication, StreamTag tag) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ replication);
    return splitmix64(h ^ static_cast<std::uint64_t>(tag));
}

Rng make_stream(std::uint64_t seed, std::uint64_t replication, StreamTag tag) {
    const std::uint64_t key = substream_key(seed, replication, tag);
    // Expand the key into a full seed sequence so nearby keys do not yield
    // correlated Mersenne states.
    std::array<std::uint32_t, 8> words{};
    std::uint64_t s = key;
    for (std::size_t i = 0; i < words.size(); i += 2) {
        s = splitmix64(s);
        words[i] = static_cast<std::uint32_t>(s);
        words[i + 1] = static_cast<std::uint32_t>(s >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

}  // namespace sts
