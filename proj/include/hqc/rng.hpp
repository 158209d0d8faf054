#pragma once

#include <cmath>
#include <cstdint>

namespace hqc {

/// SplitMix64 generator with portable uniform/normal helpers.
///
/// Every random draw in this project flows through this type so that runs
/// are reproducible bit-for-bit across compilers and standard libraries
/// (std::shuffle and the std <random> distributions are
/// implementation-defined; these helpers are not).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller (cosine branch only).
    double normal() {
        double u1 = 0.0;
        while (u1 == 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Uniform integer in [0, n). The modulo bias is below 2^-53 for the
    /// index ranges used here.
    std::uint64_t bounded(std::uint64_t n) { return next_u64() % n; }
};

/// Derives an independent stream seed from (seed, tag). Used to decorrelate
/// the init / split / per-epoch shuffle streams that share one config seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    Rng r(seed ^ (tag * 0xd1b54a32d192ed03ULL));
    return r.next_u64();
}

}  // namespace hqc
