#pragma once

#include <cstdint>
#include <random>

namespace redistrict {

/// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
/// is fixed by the standard) and derives bounded draws with our own code, so
/// a given seed produces the same stream on every platform and toolchain.
/// Never uses std::*_distribution, which are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n). Rejection sampling; unbiased for every n > 0.
    std::size_t next_index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = gen_();
            if (r >= threshold) return static_cast<std::size_t>(r % bound);
        }
    }

    bool next_bool() { return (gen_() & 1ULL) != 0; }

private:
    std::mt19937_64 gen_;
};

}  // namespace redistrict
