#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace mstfolio {

/// splitmix64 generator. Small, fast, and identical on every platform, so a
/// fixed base seed reproduces every run bit for bit. All randomness in the
/// library flows through this class; nothing uses std:: distributions, whose
/// output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Unbiased integer in [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~0ull / bound);
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Standard normal via Box-Muller; the second value of each pair is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Name recorded in run manifests for reproducibility audits.
inline const char* rng_name() { return "splitmix64+box-muller"; }

/// Derive a child seed from a base seed and a salt (anchor index, purpose
/// tag, ...). Distinct salts give statistically independent streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    Rng g(base ^ (0x9E3779B97F4A7C15ull * (salt + 0x51ED270B7A63A6CDull)));
    return g.next_u64();
}

/// k distinct elements drawn uniformly from pool, returned sorted.
/// Partial Fisher-Yates over the caller-provided (deterministic) pool order.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t k, Rng& rng) {
    for (std::size_t i = 0; i < k && i + 1 < pool.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(std::min(k, pool.size()));
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace mstfolio
