#pragma once

#include <cstdint>

namespace signbal {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Key of the independent stream `index` under `seed`:
///   stream_key(seed, index) = mix64(seed ^ mix64(index + gamma)).
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed ^ mix64(index + kGoldenGamma));
}

/// Counter-based 64-bit generator. Draw k (0-based) of key K is
/// mix64(K + (k + 1) * gamma), i.e. the SplitMix64 sequence seeded with K,
/// so any draw can be computed without the ones before it.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGoldenGamma); }

    constexpr result_type at(std::uint64_t k) const noexcept { return mix64(key_ + (k + 1) * kGoldenGamma); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by Lemire's multiply-shift rejection.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Standard normal draw by inversion of one open-interval uniform.
    double normal();

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace signbal
