#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "rce/image.hpp"

namespace rce {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

/// FNV-1a 64-bit. Pass a previous result as `state` to hash in pieces.
constexpr std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t state = kFnvOffset) noexcept {
    for (std::uint8_t b : bytes) {
        state ^= b;
        state *= kFnvPrime;
    }
    return state;
}

constexpr std::uint64_t fnv1a64(std::string_view text, std::uint64_t state = kFnvOffset) noexcept {
    for (char c : text) {
        state ^= static_cast<std::uint8_t>(c);
        state *= kFnvPrime;
    }
    return state;
}

/// FNV-1a over the raw row-major RGB bytes.
inline std::uint64_t content_digest(const Image& img) noexcept { return fnv1a64(img.bytes()); }

/// 16 lowercase hex digits, zero padded.
std::string to_hex(std::uint64_t v);
/// Inverse of to_hex; throws std::invalid_argument on anything but 1..16 hex digits.
std::uint64_t from_hex(std::string_view text);

}  // namespace rce
