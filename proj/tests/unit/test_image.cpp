#include <doctest.h>

#include "rce/errors.hpp"
#include "rce/image.hpp"
#include "test_support.hpp"

using namespace rce;
using rce::testing::ramp_image;
using rce::testing::random_image;

TEST_CASE("image construction enforces size invariants") {
    CHECK_THROWS_AS(Image(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(Image(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(Image(2, 2, std::vector<std::uint8_t>(11)), std::invalid_argument);
    const Image img(2, 3);
    CHECK(img.pixel_count() == 6);
    CHECK(img.bytes().size() == 18);
    CHECK(img.at(1, 2) == Rgb{0, 0, 0});
}

TEST_CASE("pixels are row-major interleaved rgb with top-left origin") {
    Image img(3, 2);
    img.set(2, 1, {1, 2, 3});
    const auto b = img.bytes();
    CHECK(b[(1 * 3 + 2) * 3 + 0] == 1);
    CHECK(b[(1 * 3 + 2) * 3 + 1] == 2);
    CHECK(b[(1 * 3 + 2) * 3 + 2] == 3);
}

TEST_CASE("zero-area rects are not representable") {
    CHECK_THROWS_AS(Rect(0, 0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Rect(0, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("extract: full rect is a copy") {
    RngStream rng(5);
    const Image img = random_image(17, 9, rng);
    CHECK(extract(img, img.full_rect()) == img);
}

TEST_CASE("extract: 1x1 at origin is the corner pixel") {
    RngStream rng(6);
    const Image img = random_image(4, 4, rng);
    const Image corner = extract(img, Rect(0, 0, 1, 1));
    CHECK(corner.width() == 1);
    CHECK(corner.height() == 1);
    CHECK(corner.at(0, 0) == img.at(0, 0));
}

TEST_CASE("extract: 2x3 patch of a 5x5 ramp follows the ramp formula") {
    const Image ramp = ramp_image(5, 5);
    const Rect rect(1, 2, 2, 3);
    const Image patch = extract(ramp, rect);
    REQUIRE(patch.width() == 2);
    REQUIRE(patch.height() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < 2; ++i) {
            const auto expected = static_cast<std::uint8_t>((2 + j) * 5 + (1 + i));
            CHECK(patch.at(i, j) == Rgb{expected, expected, expected});
        }
    }
    // Spot values: (col 1, row 2) = 11 and (col 2, row 4) = 22.
    CHECK(patch.at(0, 0).r == 11);
    CHECK(patch.at(1, 2).r == 22);
}

TEST_CASE("extract rejects out-of-bounds rects and names both sizes") {
    const Image img(5, 4);
    CHECK_THROWS_AS(extract(img, Rect(4, 0, 2, 1)), BoundsError);
    CHECK_THROWS_AS(extract(img, Rect(0, 4, 1, 1)), BoundsError);
    CHECK_THROWS_AS(extract(img, Rect(0, 0, 6, 1)), BoundsError);
    try {
        extract(img, Rect(3, 3, 3, 3));
        FAIL("expected BoundsError");
    } catch (const BoundsError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("x0=3") != std::string::npos);
        CHECK(msg.find("5x4") != std::string::npos);
    }
}

TEST_CASE("property: extract agrees with per-pixel lookup and leaves the source alone") {
    RngStream rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Image img = random_image(rng, 20);
        const Image before = img;
        const std::size_t w = 1 + rng.below(img.width());
        const std::size_t h = 1 + rng.below(img.height());
        const Rect rect(rng.below(img.width() - w + 1), rng.below(img.height() - h + 1), w, h);
        const Image patch = extract(img, rect);
        for (std::size_t j = 0; j < h; ++j) {
            for (std::size_t i = 0; i < w; ++i) REQUIRE(patch.at(i, j) == img.at(rect.x0() + i, rect.y0() + j));
        }
        REQUIRE(img == before);
    }
}
