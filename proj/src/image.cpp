#include "rce/image.hpp"

#include <algorithm>

#include "rce/errors.hpp"

namespace rce {

Rect::Rect(std::size_t x0, std::size_t y0, std::size_t w, std::size_t h) : x0_(x0), y0_(y0), w_(w), h_(h) {
    if (w == 0 || h == 0) throw std::invalid_argument("rect must have positive width and height, got " + to_string());
}

std::string Rect::to_string() const {
    return "rect(x0=" + std::to_string(x0_) + ", y0=" + std::to_string(y0_) + ", w=" + std::to_string(w_) +
           ", h=" + std::to_string(h_) + ")";
}

Image::Image(std::size_t width, std::size_t height) : Image(width, height, std::vector<std::uint8_t>(width * height * 3)) {}

Image::Image(std::size_t width, std::size_t height, std::vector<std::uint8_t> bytes)
    : width_(width), height_(height), bytes_(std::move(bytes)) {
    if (width == 0 || height == 0) throw std::invalid_argument("image dimensions must be >= 1");
    if (bytes_.size() != width * height * 3) {
        throw std::invalid_argument("image buffer holds " + std::to_string(bytes_.size()) + " bytes, expected " +
                                    std::to_string(width * height * 3));
    }
}

bool Image::fits(const Rect& rect) const noexcept {
    return rect.x0() < width_ && rect.y0() < height_ && rect.w() <= width_ - rect.x0() &&
           rect.h() <= height_ - rect.y0();
}

void require_fits(const Image& img, const Rect& rect) {
    if (!img.fits(rect)) {
        throw BoundsError(rect.to_string() + " does not fit in " + std::to_string(img.width()) + "x" +
                          std::to_string(img.height()) + " image");
    }
}

Image extract(const Image& img, const Rect& rect) {
    require_fits(img, rect);
    std::vector<std::uint8_t> out(rect.area() * 3);
    const auto src = img.bytes();
    const std::size_t row_bytes = rect.w() * 3;
    for (std::size_t j = 0; j < rect.h(); ++j) {
        const std::size_t from = ((rect.y0() + j) * img.width() + rect.x0()) * 3;
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(from), row_bytes,
                    out.begin() + static_cast<std::ptrdiff_t>(j * row_bytes));
    }
    return Image(rect.w(), rect.h(), std::move(out));
}

}  // namespace rce
