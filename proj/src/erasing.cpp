#include "rce/erasing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rce/errors.hpp"
#include "rce/grayscale.hpp"

namespace rce {

std::string_view to_string(Direction d) noexcept {
    return d == Direction::GrayOnColor ? "gray-on-color" : "color-on-gray";
}

Direction parse_direction(std::string_view text) {
    if (text == "gray-on-color") return Direction::GrayOnColor;
    if (text == "color-on-gray") return Direction::ColorOnGray;
    throw std::invalid_argument("unknown direction '" + std::string(text) + "'");
}

std::string_view to_string(Branch b) noexcept {
    switch (b) {
        case Branch::Identity: return "identity";
        case Branch::Global: return "global";
        case Branch::Local: return "local";
        case Branch::LocalNoFit: return "local_nofit";
    }
    return "?";
}

Branch parse_branch(std::string_view text) {
    for (Branch b : {Branch::Identity, Branch::Global, Branch::Local, Branch::LocalNoFit}) {
        if (to_string(b) == text) return b;
    }
    throw std::invalid_argument("unknown branch '" + std::string(text) + "'");
}

void RceConfig::validate() const {
    auto check = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " must be in [0, 1], got " + std::to_string(p));
        }
    };
    check(p_r, "p_r");
    check(p_g, "p_g");
    region.validate();
}

Image local_transform(const Image& base, const Image& patch, const Rect& rect) {
    if (base.width() != patch.width() || base.height() != patch.height()) {
        throw BoundsError("local_transform: image sizes differ (" + std::to_string(base.width()) + "x" +
                          std::to_string(base.height()) + " vs " + std::to_string(patch.width()) + "x" +
                          std::to_string(patch.height()) + ")");
    }
    require_fits(base, rect);
    Image out = base;
    const auto src = patch.bytes();
    auto dst = out.bytes();
    const std::size_t row_bytes = rect.w() * 3;
    for (std::size_t y = rect.y0(); y < rect.y0() + rect.h(); ++y) {
        const auto at = static_cast<std::ptrdiff_t>((y * base.width() + rect.x0()) * 3);
        std::copy_n(src.begin() + at, row_bytes, dst.begin() + at);
    }
    return out;
}

AugmentationRecord decide_rce(std::size_t width, std::size_t height, const RceConfig& cfg, RngStream& rng) {
    AugmentationRecord rec;
    rec.stream_seed = rng.seed();
    rec.p1 = rng.unit();
    if (rec.p1 >= cfg.p_r) {
        rec.branch = Branch::Identity;
        return rec;
    }
    rec.p2 = rng.unit();
    if (*rec.p2 <= cfg.p_g) {
        rec.branch = Branch::Global;
        return rec;
    }
    rec.rect = rand_position(width, height, cfg.region, rng);
    rec.branch = rec.rect ? Branch::Local : Branch::LocalNoFit;
    return rec;
}

Image render_record(const Image& img, const AugmentationRecord& record, Direction direction) {
    switch (record.branch) {
        case Branch::Identity:
        case Branch::LocalNoFit:
            return img;
        case Branch::Global:
            return to_grayscale(img);
        case Branch::Local: {
            if (!record.rect) throw std::invalid_argument("local record without a rect");
            const Image gray = to_grayscale(img);
            return direction == Direction::GrayOnColor ? local_transform(img, gray, *record.rect)
                                                       : local_transform(gray, img, *record.rect);
        }
    }
    throw std::logic_error("unreachable branch");
}

RceResult apply_rce(const Image& img, const RceConfig& cfg, RngStream& rng) {
    AugmentationRecord record = decide_rce(img.width(), img.height(), cfg, rng);
    Image out = render_record(img, record, cfg.direction);
    return {std::move(out), std::move(record)};
}

}  // namespace rce
