#pragma once

#include <cstdint>

#include "rce/image.hpp"

namespace rce {

/// Channel weights in thousandths (ITU-R BT.601: 0.299, 0.587, 0.114).
/// They sum to exactly 1000, which makes equal-channel pixels fixed points.
struct LumaWeights {
    std::uint32_t r;
    std::uint32_t g;
    std::uint32_t b;
};

inline constexpr LumaWeights kBt601{299, 587, 114};
static_assert(kBt601.r + kBt601.g + kBt601.b == 1000);

/// round(0.299 r + 0.587 g + 0.114 b), halves rounded up, in exact integer arithmetic.
constexpr std::uint8_t luma(Rgb px, LumaWeights w = kBt601) noexcept {
    const std::uint32_t scaled = w.r * px.r + w.g * px.g + w.b * px.b;
    return static_cast<std::uint8_t>((scaled + 500) / 1000);
}

/// Global grayscale transform: every pixel becomes (y, y, y) with y = luma(pixel).
Image to_grayscale(const Image& img);

}  // namespace rce
