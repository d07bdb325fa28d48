#pragma once

#include <cstdint>
#include <random>

namespace hkan {

// Deterministic random stream. All randomness in the library flows through
// this wrapper so that results are reproducible bit-for-bit from a seed,
// independent of platform quirks in <random> distributions.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_bits() { return engine_(); }

    // Uniform double in [lo, hi) built from the top 53 bits.
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Uniform index in {0, ..., n-1} via 128-bit multiply (no modulo bias
    // worth speaking of at these ranges).
    std::size_t uniform_index(std::size_t n) {
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(next_bits()) * static_cast<unsigned __int128>(n);
        return static_cast<std::size_t>(wide >> 64);
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

// Spawns an independent child seed from a master seed and up to three
// coordinates (layer, node, input). Streams built from distinct coordinates
// are decorrelated, so parallel fits never share state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t h = detail::splitmix64(master);
    h = detail::splitmix64(h ^ a);
    h = detail::splitmix64(h ^ b);
    h = detail::splitmix64(h ^ c);
    return h;
}

} // namespace hkan
