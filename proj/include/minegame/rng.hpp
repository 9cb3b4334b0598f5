#pragma once

#include <cstdint>

namespace minegame {

// SplitMix64 finalizer: full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64 step: advances `state` and returns the next output word.
// Used for seeding and for deriving independent stream keys.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    return mix64(state);
}

// xoshiro256++ (Blackman & Vigna). Small state, fast construction,
// exact same sequence on every platform. A (seed, stream) pair selects
// an independent substream, so per-run and per-trial generators can be
// created cheaply and reproducibly. Seed and stream are avalanche-mixed
// separately before keying the state chain: neighbouring stream ids must
// not yield overlapping SplitMix positions.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                          mix64(stream + 0x632BE59BD9B4E019ULL);
        s_[0] = splitmix64_next(x);
        s_[1] = splitmix64_next(x);
        s_[2] = splitmix64_next(x);
        s_[3] = splitmix64_next(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 bits of precision.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace minegame
