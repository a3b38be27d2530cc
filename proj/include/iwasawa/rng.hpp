#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace iwasawa {

/// SplitMix64 finaliser (Steele, Lea, Flood 2014). Used to derive independent
/// per-trial seeds: trial_seed(seed, t) = splitmix64(seed + (t + 1) * 0x9E3779B97F4A7C15).
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

/// Deterministic generator: std::mt19937_64 for raw bits, 53-bit uniform
/// doubles, and Box-Muller normals. Everything past the raw engine is written
/// out here, so the output is bit-identical on every conforming platform
/// (std::normal_distribution is implementation-defined and is not used).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal N(0, 1).
    double normal();
    /// Standard complex Gaussian: real and imaginary parts N(0, 1/2), so E|z|^2 = 1.
    std::complex<double> complex_normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace iwasawa
