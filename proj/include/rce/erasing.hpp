#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rce/image.hpp"
#include "rce/region.hpp"
#include "rce/rng.hpp"

namespace rce {

/// Which image supplies the patch on the local branch.
enum class Direction {
    GrayOnColor,  ///< grayscale patch pasted into the color image (default)
    ColorOnGray,  ///< color patch pasted into the grayscale image
};

std::string_view to_string(Direction d) noexcept;
/// Accepts "gray-on-color" / "color-on-gray"; throws std::invalid_argument otherwise.
Direction parse_direction(std::string_view text);

struct RceConfig {
    double p_r = 0.40;  ///< probability of erasing at all
    double p_g = 0.15;  ///< probability of the global branch, given erasing
    RegionParams region{};
    Direction direction = Direction::GrayOnColor;

    void validate() const;
};

enum class Branch { Identity, Global, Local, LocalNoFit };

std::string_view to_string(Branch b) noexcept;
Branch parse_branch(std::string_view text);

/// What one call decided. `rect` is set iff branch == Local; `p2` is unset iff branch == Identity.
struct AugmentationRecord {
    Branch branch = Branch::Identity;
    std::optional<Rect> rect;
    double p1 = 0.0;
    std::optional<double> p2;
    std::uint64_t stream_seed = 0;

    friend bool operator==(const AugmentationRecord&, const AugmentationRecord&) = default;
};

struct RceResult {
    Image image;
    AugmentationRecord record;
};

/// Output pixel (i, j) is `patch`'s pixel inside `rect` and `base`'s pixel elsewhere.
/// With base = color and patch = grayscale this is x - x(rect) + t(x)(rect).
Image local_transform(const Image& base, const Image& patch, const Rect& rect);

/// Runs the branch logic only (no pixel work), consuming draws from `rng`:
///   p1 = unit(); p1 >= p_r -> Identity
///   p2 = unit(); p2 <= p_g -> Global
///   rand_position(...)     -> Local, or LocalNoFit if no rect fits
AugmentationRecord decide_rce(std::size_t width, std::size_t height, const RceConfig& cfg, RngStream& rng);

/// Renders a decision onto `img`. Throws BoundsError if the record's rect does not fit.
Image render_record(const Image& img, const AugmentationRecord& record, Direction direction);

/// Random Color Erasing for one image.
RceResult apply_rce(const Image& img, const RceConfig& cfg, RngStream& rng);

}  // namespace rce
