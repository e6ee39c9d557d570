#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace grkex {

// Deterministic random source. All sampling goes through explicit rejection
// so results are identical across standard library implementations; nothing
// here uses std::uniform_int_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}

    // Independent substream t of a master seed: fork(seed, 0), fork(seed, 1), ...
    // Lets trial t of an experiment draw the same values whether trials run
    // serially or distributed.
    static Rng fork(std::uint64_t seed, std::uint64_t stream) {
        return Rng(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1)));
    }

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, bound), bias-free via masked rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
        const std::uint64_t mask = (std::uint64_t(1) << std::bit_width(bound)) - 1;
        for (;;) {
            std::uint64_t r = next() & mask;
            if (r < bound) return r;
        }
    }

    std::uint32_t residue(std::uint32_t n) { return static_cast<std::uint32_t>(below(n)); }

private:
    // splitmix64 finalizer; also used to spread closely spaced seeds.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
};

}  // namespace grkex
