#pragma once

#include <cstdint>
#include <limits>

namespace srlnc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based 64-bit generator: output k is mix64(key + k * golden_gamma).
/// Substreams are keyed by (seed, index), so trial t draws the same numbers
/// no matter which worker runs it or in what order.
class CounterRng {
  public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static constexpr CounterRng substream(std::uint64_t seed, std::uint64_t index) noexcept {
        return CounterRng(mix64(seed ^ mix64(index + kGamma)) + index * kGamma);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGamma); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's method with rejection).
    std::uint64_t below(std::uint64_t bound) noexcept {
        unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    constexpr std::uint64_t counter() const noexcept { return counter_; }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace srlnc
