#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace xplain {

/// Seeded random source used everywhere randomness is required.
///
/// Wraps std::mt19937_64 but implements its own bounded-integer, uniform
/// real and gaussian draws. The standard distributions are
/// implementation-defined, so going through this wrapper keeps every run
/// reproducible for a given seed independent of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive. Rejection sampling,
    /// so the result is exactly uniform.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool coin() { return (engine_() & 1u) != 0; }

    /// Standard normal via Box-Muller. One value per call; the twin is
    /// discarded to keep the draw count predictable.
    double gaussian() {
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniformly distributed direction on the unit sphere in `dim` dimensions.
    std::vector<double> unit_direction(std::size_t dim) {
        std::vector<double> v(dim);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (auto& x : v) {
                x = gaussian();
                norm += x * x;
            }
        } while (norm < 1e-12);
        norm = std::sqrt(norm);
        for (auto& x : v) x /= norm;
        return v;
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive independent sub-stream seeds from a
/// run seed and a fixed stage tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + tag * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace xplain
