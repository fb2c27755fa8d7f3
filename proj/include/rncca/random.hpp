#pragma once

#include <cstdint>
#include <random>

namespace rncca {

// Reproducible random source shared by rule generation and sampled sweeps.
//
// The engine is std::mt19937_64 constructed from the 64-bit seed, whose output
// sequence is fixed by the C++ standard. Bounded draws use rejection sampling
// (see below) instead of std::uniform_int_distribution, whose algorithm is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound). Draws x until x < bound * floor(2^64 / bound),
    // then returns x mod bound.
    std::uint64_t uniform(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

}  // namespace rncca
