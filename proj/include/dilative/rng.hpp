#pragma once

#include <cstdint>
#include <cmath>

namespace dilative {

// SplitMix64 scrambler (Steele/Lea/Flood). Used both as the core generator
// and as the seed mixer, so every Monte Carlo result is bit-reproducible
// across platforms; std::normal_distribution would not give that guarantee.
inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for batch item `index` derived from a master seed. Results are then
// independent of evaluation order and worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    std::uint64_t s = master ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix64_next(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept { return splitmix64_next(state_); }

    /// Uniform on [0,1), 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0,1]; safe as a log argument.
    double uniform_pos() noexcept { return 1.0 - uniform(); }

    /// Standard normal deviate, Marsaglia polar method with cached spare.
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    double exponential(double mean) noexcept {
        return -mean * std::log(uniform_pos());
    }

    /// Poisson count by the product method; exact for any mean, O(mean) cost.
    std::uint64_t poisson(double mean) noexcept {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        std::uint64_t count = 0;
        double prod = uniform_pos();
        while (prod > limit) {
            ++count;
            prod *= uniform_pos();
        }
        return count;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace dilative
