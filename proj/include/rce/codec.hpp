#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rce/image.hpp"

namespace rce {

/// Decodes a PNG, JPEG or BMP file (format sniffed from the leading bytes,
/// not the extension). Alpha is discarded, gray and palette images are
/// expanded to RGB, and 16-bit PNG samples keep only their high byte.
/// Throws IoError if the file cannot be read, DecodeError if it is not a
/// supported image; both messages name the path.
Image load_image(const std::filesystem::path& path);

/// Writes `img` as an 8-bit RGB PNG. Throws IoError on failure.
void save_image(const Image& img, const std::filesystem::path& path);

// In-memory forms, used by the file functions and by tests.
Image decode_image(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const Image& img);

}  // namespace rce
