#pragma once

#include <cstddef>
#include <optional>

#include "rce/image.hpp"
#include "rce/rng.hpp"

namespace rce {

/// Rectangle sampler parameters. Defaults follow the random-erasing sampler:
/// area fraction in [0.02, 0.4], aspect (h / w) in [0.3, 1/0.3], 100 attempts.
struct RegionParams {
    double area_lo = 0.02;
    double area_hi = 0.4;
    double aspect_lo = 0.3;
    double aspect_hi = 1.0 / 0.3;
    unsigned max_attempts = 100;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// Samples a rect strictly smaller than the image in both dimensions.
///
/// Each attempt draws, in order: area fraction, aspect, then (only if the
/// candidate fits) x and y. Sides are h = round(sqrt(area * aspect)) and
/// w = round(sqrt(area / aspect)); a candidate fits when 1 <= w < width and
/// 1 <= h < height, and the top-left corner is drawn with below(width - w + 1)
/// and below(height - h + 1). Returns nullopt after max_attempts misses.
std::optional<Rect> rand_position(std::size_t width, std::size_t height, const RegionParams& params, RngStream& rng);

}  // namespace rce
