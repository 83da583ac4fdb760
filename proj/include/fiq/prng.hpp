#pragma once

#include <cstdint>
#include <random>

#include "fiq/rational.hpp"

namespace fiq {

/// SplitMix64 step. Used for seed derivation only, never for sampling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Stable per-trial seed splitting rule: trial `index` of base seed `seed`
/// uses splitmix64(seed XOR splitmix64(index + 1)). Trajectories seeded this
/// way are treated as independent streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

/// Seeded randomness source for exact threshold sampling.
///
/// A Bernoulli draw against a rational p = a/b samples an integer uniformly
/// in [0, b) and compares it with a. No floating-point sampling anywhere, so
/// trials are replayable bit-exactly from the seed and carry no rounding
/// bias. Determined propensities (b = 1) consume no randomness.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n), unbiased via rejection. n must be > 0.
    std::uint64_t uniform_below_u64(std::uint64_t n) {
        if (n == 0) {
            throw DomainError("uniform_below: zero bound");
        }
        if (n == 1) {
            return 0;
        }
        // Reject the low remainder band so every residue is equally likely.
        const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) {
                return r % n;
            }
        }
    }

    /// Uniform integer in [0, n) for arbitrary-precision bounds.
    Int uniform_below(const Int& n) {
        if (n <= 0) {
            throw DomainError("uniform_below: nonpositive bound");
        }
        if (n <= Int(UINT64_MAX)) {
            return Int(uniform_below_u64(n.convert_to<std::uint64_t>()));
        }
        const std::size_t bits = boost::multiprecision::msb(n) + 1;
        const std::size_t words = (bits + 63) / 64;
        const std::size_t top_bits = bits - 64 * (words - 1);
        for (;;) {
            Int r = 0;
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t chunk = engine_();
                if (w + 1 == words && top_bits < 64) {
                    chunk &= (std::uint64_t(1) << top_bits) - 1;
                }
                r |= Int(chunk) << (64 * w);
            }
            if (r < n) {
                return r;
            }
        }
    }

    /// True with probability exactly a/b. p must lie in [0, 1].
    /// Consumes no randomness when p is 0 or 1.
    bool bernoulli(const Rational& p) {
        const Int a = num(p);
        const Int b = den(p);
        if (a < 0 || a > b) {
            throw DomainError("bernoulli: propensity outside [0,1]");
        }
        if (b == 1) {
            return a == 1;
        }
        return uniform_below(b) < a;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fiq
