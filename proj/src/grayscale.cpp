#include "rce/grayscale.hpp"

namespace rce {

Image to_grayscale(const Image& img) {
    Image out(img.width(), img.height());
    const auto src = img.bytes();
    auto dst = out.bytes();
    for (std::size_t i = 0; i < src.size(); i += 3) {
        const std::uint8_t y = luma({src[i], src[i + 1], src[i + 2]});
        dst[i] = y;
        dst[i + 1] = y;
        dst[i + 2] = y;
    }
    return out;
}

}  // namespace rce
