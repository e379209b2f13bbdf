#pragma once

#include <cstdint>
#include <random>

#include "kwlab/su2.hpp"

namespace kwlab {

/// Seeded generator with platform-independent uniform draws (the standard
/// distributions are implementation defined, which would break byte-identical reports).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for sample k of a suite.
    static Rng stream(std::uint64_t seed, std::uint64_t k) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        std::mt19937_64 e(seq);
        return Rng(e());
    }

    /// Uniform on [0, 1).
    Real unit() { return static_cast<Real>(engine_() >> 11) * 0x1.0p-53L; }
    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * unit(); }
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace kwlab
