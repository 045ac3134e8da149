#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace xcsniche {

/// Per-instance random source. Every engine, environment episode and run owns
/// one, so identical seeds reproduce identical trajectories.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    bool chance(double p) { return uniform() < p; }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace xcsniche
