#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rce {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Axis-aligned rectangle: columns [x0, x0 + w), rows [y0, y0 + h).
/// Zero-area rects cannot be constructed; bounds against an image are checked
/// where the rect is applied.
class Rect {
  public:
    Rect(std::size_t x0, std::size_t y0, std::size_t w, std::size_t h);

    std::size_t x0() const noexcept { return x0_; }
    std::size_t y0() const noexcept { return y0_; }
    std::size_t w() const noexcept { return w_; }
    std::size_t h() const noexcept { return h_; }
    std::size_t area() const noexcept { return w_ * h_; }

    bool contains(std::size_t x, std::size_t y) const noexcept {
        return x >= x0_ && x < x0_ + w_ && y >= y0_ && y < y0_ + h_;
    }

    std::string to_string() const;

    friend bool operator==(const Rect&, const Rect&) = default;

  private:
    std::size_t x0_;
    std::size_t y0_;
    std::size_t w_;
    std::size_t h_;
};

/// Dense RGB image, row-major, top-left origin, interleaved (r, g, b) bytes.
/// Grayscale images use the same type with r == g == b.
class Image {
  public:
    /// Zero-filled (black) image. Both dimensions must be >= 1.
    Image(std::size_t width, std::size_t height);
    /// Takes ownership of `bytes`, which must hold exactly width * height * 3 values.
    Image(std::size_t width, std::size_t height, std::vector<std::uint8_t> bytes);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }

    Rgb at(std::size_t x, std::size_t y) const noexcept {
        const std::size_t i = index(x, y);
        return {bytes_[i], bytes_[i + 1], bytes_[i + 2]};
    }
    void set(std::size_t x, std::size_t y, Rgb px) noexcept {
        const std::size_t i = index(x, y);
        bytes_[i] = px.r;
        bytes_[i + 1] = px.g;
        bytes_[i + 2] = px.b;
    }

    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
    std::span<std::uint8_t> bytes() noexcept { return bytes_; }

    /// True when the rect lies entirely inside this image.
    bool fits(const Rect& rect) const noexcept;
    Rect full_rect() const noexcept { return Rect(0, 0, width_, height_); }

    friend bool operator==(const Image&, const Image&) = default;

  private:
    std::size_t index(std::size_t x, std::size_t y) const noexcept { return (y * width_ + x) * 3; }

    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> bytes_;
};

/// Copy of the pixels under `rect`; result pixel (i, j) is img pixel (x0 + i, y0 + j).
/// Throws BoundsError if the rect does not fit.
Image extract(const Image& img, const Rect& rect);

/// Throws BoundsError naming both the rect and the image size unless img.fits(rect).
void require_fits(const Image& img, const Rect& rect);

}  // namespace rce
