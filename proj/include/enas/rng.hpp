#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace enas {

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

/// Seed of replicate `run_index` under `master_seed`. Pure; independent of
/// scheduling and thread count.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
    return mix64(master_seed + (run_index + 1) * kGoldenGamma);
}

/// Sequential SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    result_type operator()() noexcept { return mix64(state_ += kGoldenGamma); }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  private:
    std::uint64_t state_;
};

/// Uniform integer in [0, k) by 128-bit multiply-high. k must be > 0.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t k) noexcept {
    __extension__ using u128 = unsigned __int128;
    const u128 prod = static_cast<u128>(rng()) * k;
    return static_cast<std::uint64_t>(prod >> 64);
}

/// Uniform real in (0, 1] with 53 bits of resolution.
inline double uniform_open_closed(SplitMix64& rng) noexcept {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline bool coin(SplitMix64& rng) noexcept { return (rng() >> 63) != 0; }

/// Poisson(1) by Knuth's product-of-uniforms inversion.
inline int poisson_unit(SplitMix64& rng) noexcept {
    static const double threshold = std::exp(-1.0);
    int k = 0;
    double prod = uniform_open_closed(rng);
    while (prod >= threshold) {
        ++k;
        prod *= uniform_open_closed(rng);
    }
    return k;
}

}  // namespace enas
