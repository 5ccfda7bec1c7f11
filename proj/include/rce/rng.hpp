#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace rce {

/// One SplitMix64 output step for the given state (state advanced by the golden gamma first).
constexpr std::uint64_t splitmix64(std::uint64_t state) noexcept {
    std::uint64_t z = state + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class SplitMix64 {
  public:
    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t out = splitmix64(state_);
        state_ += 0x9e3779b97f4a7c15ull;
        return out;
    }

  private:
    std::uint64_t state_;
};

/*
 * Single-owner random stream: xoshiro256++ whose 256-bit state is filled by
 * four consecutive SplitMix64 outputs of the 64-bit stream seed.
 *
 *   unit()        = (next() >> 11) * 2^-53          in [0, 1)
 *   uniform(a, b) = a + (b - a) * unit()
 *   below(n)      = floor(unit() * n)               in [0, n)
 *
 * These constructions are part of the reproducibility contract; changing any
 * of them changes every golden value.
 */
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) noexcept;

    RngStream(const RngStream&) = delete;
    RngStream& operator=(const RngStream&) = delete;
    RngStream(RngStream&&) noexcept = default;
    RngStream& operator=(RngStream&&) noexcept = default;

    std::uint64_t next() noexcept;
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }
    std::size_t below(std::size_t n) noexcept;

    /// Seed the stream was constructed from (recorded for replay).
    std::uint64_t seed() const noexcept { return seed_; }
    const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

  private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> s_;
};

}  // namespace rce
