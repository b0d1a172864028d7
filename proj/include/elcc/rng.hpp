#pragma once

#include <cstdint>
#include <string_view>

namespace elcc {

// xoshiro256** with splitmix64 seeding. All randomness in the library flows
// through this generator so that runs are reproducible across platforms;
// the standard <random> distributions are implementation-defined and are
// deliberately not used.
class Rng {
 public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

    /// Uniform integer in [0, bound), bound >= 1. Unbiased (rejection sampling).
    std::uint32_t bounded(std::uint32_t bound) {
        // Lemire's multiply-shift with rejection on the low word.
        std::uint64_t m = std::uint64_t(next_u32()) * bound;
        auto low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            const std::uint32_t threshold = (0u - bound) % bound;
            while (low < threshold) {
                m = std::uint64_t(next_u32()) * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

 private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

/// Derives an independent, reproducible substream from a root seed.
/// Substreams are identified by a purpose tag plus a counter, so parallel
/// trials can draw from disjoint streams regardless of scheduling order.
inline Rng substream(std::uint64_t root_seed, std::string_view tag, std::uint64_t counter) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t mix = root_seed;
    std::uint64_t a = Rng::splitmix64(mix);
    mix = h;
    std::uint64_t b = Rng::splitmix64(mix);
    mix = counter + 0x9e3779b97f4a7c15ULL;
    std::uint64_t c = Rng::splitmix64(mix);
    return Rng(a ^ (b * 0x9e3779b97f4a7c15ULL) ^ (c << 1));
}

}  // namespace elcc
