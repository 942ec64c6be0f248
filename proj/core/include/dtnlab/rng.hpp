#pragma once

#include <cstdint>
#include <string_view>

namespace dtnlab {

// Deterministic PRNG (xoshiro256++) with explicit stream splitting.
//
// Simulation reproducibility depends on every random draw coming from a
// stream that is a pure function of (master seed, stream label, index).
// std::mt19937 + std:: distributions are avoided on purpose: the standard
// distributions are implementation-defined, which would break byte-identical
// logs across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the full state
        std::uint64_t x = seed;
        for (auto& s : state_) s = splitmix64(x);
    }

    /// Derives an independent stream from a master seed and a purpose label,
    /// e.g. from_stream(seed, "mobility", host_id).
    static Rng from_stream(std::uint64_t master, std::string_view label, std::uint64_t index = 0) {
        std::uint64_t h = fnv1a(label);
        std::uint64_t x = master;
        x = splitmix64(x) ^ h;
        x = splitmix64(x) ^ (index * 0x9e3779b97f4a7c15ULL);
        return Rng(splitmix64(x));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n), unbiased via rejection. n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0ULL - n) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::uint64_t state_[4];
};

} // namespace dtnlab
