#include "rce/region.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rce {

void RegionParams::validate() const {
    if (!(area_lo > 0.0 && area_lo <= area_hi && area_hi <= 1.0)) {
        throw std::invalid_argument("area range must satisfy 0 < area_lo <= area_hi <= 1, got [" +
                                    std::to_string(area_lo) + ", " + std::to_string(area_hi) + "]");
    }
    if (!(aspect_lo > 0.0 && aspect_lo <= aspect_hi && std::isfinite(aspect_hi))) {
        throw std::invalid_argument("aspect range must satisfy 0 < aspect_lo <= aspect_hi, got [" +
                                    std::to_string(aspect_lo) + ", " + std::to_string(aspect_hi) + "]");
    }
    if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
}

std::optional<Rect> rand_position(std::size_t width, std::size_t height, const RegionParams& params, RngStream& rng) {
    const double image_area = static_cast<double>(width) * static_cast<double>(height);
    for (unsigned attempt = 0; attempt < params.max_attempts; ++attempt) {
        const double target_area = rng.uniform(params.area_lo, params.area_hi) * image_area;
        const double aspect = rng.uniform(params.aspect_lo, params.aspect_hi);
        const auto h = static_cast<std::size_t>(std::lround(std::sqrt(target_area * aspect)));
        const auto w = static_cast<std::size_t>(std::lround(std::sqrt(target_area / aspect)));
        if (w >= 1 && h >= 1 && w < width && h < height) {
            const std::size_t x0 = rng.below(width - w + 1);
            const std::size_t y0 = rng.below(height - h + 1);
            return Rect(x0, y0, w, h);
        }
    }
    return std::nullopt;
}

}  // namespace rce
