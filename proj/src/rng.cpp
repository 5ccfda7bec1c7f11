#include "rce/rng.hpp"

#include <bit>
#include <cmath>

namespace rce {

RngStream::RngStream(std::uint64_t seed) noexcept : seed_(seed) {
    SplitMix64 seeder(seed);
    for (auto& word : s_) word = seeder.next();
}

std::uint64_t RngStream::next() noexcept {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

std::size_t RngStream::below(std::size_t n) noexcept {
    return static_cast<std::size_t>(std::floor(unit() * static_cast<double>(n)));
}

}  // namespace rce
