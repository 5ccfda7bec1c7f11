#include <doctest.h>

#include <map>

#include "rce/erasing.hpp"
#include "rce/errors.hpp"
#include "rce/grayscale.hpp"
#include "test_support.hpp"

using namespace rce;
using rce::testing::random_image;

namespace {

Image gray_input(RngStream& rng, std::size_t w, std::size_t h) { return to_grayscale(random_image(w, h, rng)); }

}  // namespace

TEST_CASE("config defaults and validation") {
    const RceConfig cfg;
    CHECK(cfg.p_r == 0.40);
    CHECK(cfg.p_g == 0.15);
    CHECK(cfg.direction == Direction::GrayOnColor);
    CHECK_NOTHROW(cfg.validate());
    RceConfig bad = cfg;
    bad.p_r = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.p_g = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("names round-trip") {
    for (Branch b : {Branch::Identity, Branch::Global, Branch::Local, Branch::LocalNoFit}) {
        CHECK(parse_branch(to_string(b)) == b);
    }
    CHECK(parse_direction("color-on-gray") == Direction::ColorOnGray);
    CHECK_THROWS_AS(parse_direction("sideways"), std::invalid_argument);
}

TEST_CASE("local_transform: worked 2x2 example") {
    Image visible(2, 2);
    visible.set(0, 0, {10, 20, 30});
    visible.set(1, 0, {40, 50, 60});
    visible.set(0, 1, {70, 80, 90});
    visible.set(1, 1, {100, 110, 120});
    const Image out = local_transform(visible, to_grayscale(visible), Rect(0, 0, 1, 1));
    CHECK(out.at(0, 0) == Rgb{18, 18, 18});  // 0.299*10 + 0.587*20 + 0.114*30 = 18.15
    CHECK(out.at(1, 0) == visible.at(1, 0));
    CHECK(out.at(0, 1) == visible.at(0, 1));
    CHECK(out.at(1, 1) == visible.at(1, 1));
}

TEST_CASE("local_transform: full rect gives the grayscale image") {
    RngStream rng(11);
    const Image img = random_image(13, 7, rng);
    const Image gray = to_grayscale(img);
    CHECK(local_transform(img, gray, img.full_rect()) == gray);
}

TEST_CASE("local_transform: grayscale input is unchanged") {
    RngStream rng(12);
    const Image img = gray_input(rng, 9, 9);
    CHECK(local_transform(img, to_grayscale(img), Rect(2, 3, 4, 5)) == img);
}

TEST_CASE("local_transform errors") {
    CHECK_THROWS_AS(local_transform(Image(4, 4), Image(4, 5), Rect(0, 0, 1, 1)), BoundsError);
    CHECK_THROWS_AS(local_transform(Image(4, 4), Image(4, 4), Rect(3, 3, 2, 2)), BoundsError);
}

TEST_CASE("property: locality on random rects") {
    RngStream rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const Image img = random_image(rng, 24);
        const Image gray = to_grayscale(img);
        const std::size_t w = 1 + rng.below(img.width());
        const std::size_t h = 1 + rng.below(img.height());
        const Rect rect(rng.below(img.width() - w + 1), rng.below(img.height() - h + 1), w, h);
        const Image out = local_transform(img, gray, rect);
        const Image reverse = local_transform(gray, img, rect);
        for (std::size_t y = 0; y < img.height(); ++y) {
            for (std::size_t x = 0; x < img.width(); ++x) {
                const bool inside = rect.contains(x, y);
                REQUIRE(out.at(x, y) == (inside ? gray.at(x, y) : img.at(x, y)));
                REQUIRE(reverse.at(x, y) == (inside ? img.at(x, y) : gray.at(x, y)));
            }
        }
    }
}

TEST_CASE("golden decisions on a 64x48 image with defaults") {
    // From tests/oracles/reference.py (decide 64x48 seed N).
    const RceConfig cfg;
    struct Golden {
        std::uint64_t seed;
        Branch branch;
        double p1;
        std::optional<Rect> rect;
    };
    const Golden cases[] = {
        {1, Branch::Identity, 0.8116121588818848, std::nullopt},
        {3, Branch::Local, 0.05145141894999983, Rect(5, 16, 35, 22)},
        {5, Branch::Local, 0.29202287154046747, Rect(24, 28, 19, 9)},
        {7, Branch::Local, 0.05536043647833311, Rect(39, 5, 24, 38)},
        {8, Branch::Local, 0.39192266270825726, Rect(20, 14, 14, 33)},
    };
    for (const auto& g : cases) {
        RngStream rng(g.seed);
        const AugmentationRecord rec = decide_rce(64, 48, cfg, rng);
        CHECK(rec.stream_seed == g.seed);
        CHECK(rec.branch == g.branch);
        CHECK(rec.p1 == g.p1);
        CHECK(rec.rect == g.rect);
        CHECK(rec.p2.has_value() == (g.branch != Branch::Identity));
    }
}

TEST_CASE("record invariants: rect iff local, second draw iff not identity") {
    RceConfig cfg;
    cfg.p_r = 0.8;
    cfg.p_g = 0.3;
    for (std::uint64_t seed = 0; seed < 3000; ++seed) {
        RngStream rng(seed);
        const auto rec = decide_rce(seed % 3 == 0 ? 2 : 40, 30, cfg, rng);
        REQUIRE(rec.rect.has_value() == (rec.branch == Branch::Local));
        REQUIRE(rec.p2.has_value() == (rec.branch != Branch::Identity));
        REQUIRE((rec.p1 >= cfg.p_r) == (rec.branch == Branch::Identity));
        if (rec.p2) REQUIRE((*rec.p2 <= cfg.p_g) == (rec.branch == Branch::Global));
    }
}

TEST_CASE("branch forcing: p_r = 0 is identity, p_r = p_g = 1 is global") {
    RngStream images(5);
    const Image img = random_image(20, 10, images);
    RceConfig never;
    never.p_r = 0.0;
    RceConfig always;
    always.p_r = 1.0;
    always.p_g = 1.0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        RngStream a(seed), b(seed);
        const RceResult kept = apply_rce(img, never, a);
        REQUIRE(kept.image == img);
        REQUIRE(kept.record.branch == Branch::Identity);
        const RceResult gray = apply_rce(img, always, b);
        REQUIRE(gray.image == to_grayscale(img));
        REQUIRE(gray.record.branch == Branch::Global);
    }
}

TEST_CASE("no-fit region leaves the image unchanged with its own tag") {
    RceConfig cfg;
    cfg.p_r = 1.0;
    cfg.p_g = 0.0;
    RngStream rng(3);
    const Image img(1, 1, {200, 10, 10});
    const RceResult r = apply_rce(img, cfg, rng);
    CHECK(r.record.branch == Branch::LocalNoFit);
    CHECK_FALSE(r.record.rect.has_value());
    CHECK(r.image == img);
}

TEST_CASE("branch law at p_r = 0.4, p_g = 0.15") {
    const RceConfig cfg;
    std::map<Branch, int> counts;
    const int n = 100000;
    for (int seed = 0; seed < n; ++seed) {
        RngStream rng(static_cast<std::uint64_t>(seed));
        ++counts[decide_rce(64, 32, cfg, rng).branch];
    }
    CHECK(std::abs(counts[Branch::Identity] / double(n) - 0.60) <= 0.01);
    CHECK(std::abs(counts[Branch::Global] / double(n) - 0.06) <= 0.005);
    CHECK(std::abs((counts[Branch::Local] + counts[Branch::LocalNoFit]) / double(n) - 0.34) <= 0.01);
}

TEST_CASE("apply_rce outputs stay within {input, grayscale} per pixel") {
    RngStream images(8);
    RceConfig cfg;
    cfg.p_r = 1.0;
    cfg.p_g = 0.2;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Image img = random_image(images, 30);
        const Image gray = to_grayscale(img);
        RngStream rng(seed);
        const RceResult r = apply_rce(img, cfg, rng);
        REQUIRE(r.image.width() == img.width());
        REQUIRE(r.image.height() == img.height());
        for (std::size_t y = 0; y < img.height(); ++y) {
            for (std::size_t x = 0; x < img.width(); ++x) {
                const Rgb px = r.image.at(x, y);
                REQUIRE((px == img.at(x, y) || px == gray.at(x, y)));
                if (r.record.branch == Branch::Local) {
                    REQUIRE(px == (r.record.rect->contains(x, y) ? gray.at(x, y) : img.at(x, y)));
                }
            }
        }
    }
}

TEST_CASE("determinism and replay from the record seed") {
    RngStream images(21);
    const Image img = random_image(40, 40, images);
    const RceConfig cfg{0.9, 0.1, {}, Direction::GrayOnColor};
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        RngStream a(seed);
        const RceResult first = apply_rce(img, cfg, a);
        RngStream b(first.record.stream_seed);
        const RceResult again = apply_rce(img, cfg, b);
        REQUIRE(first.image == again.image);
        REQUIRE(first.record == again.record);
        REQUIRE(render_record(img, first.record, cfg.direction) == first.image);
    }
}

TEST_CASE("grayscale inputs come back unchanged on every branch") {
    RngStream images(31);
    const RceConfig cfg{1.0, 0.5, {}, Direction::GrayOnColor};
    RceConfig reverse = cfg;
    reverse.direction = Direction::ColorOnGray;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Image img = gray_input(images, 16, 12);
        RngStream a(seed), b(seed);
        REQUIRE(apply_rce(img, cfg, a).image == img);
        REQUIRE(apply_rce(img, reverse, b).image == img);
    }
}

TEST_CASE("color-on-gray direction pastes color into the gray image") {
    RngStream images(41);
    const Image img = random_image(32, 32, images);
    const Image gray = to_grayscale(img);
    RceConfig cfg{1.0, 0.0, {}, Direction::ColorOnGray};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RngStream rng(seed);
        const RceResult r = apply_rce(img, cfg, rng);
        if (r.record.branch != Branch::Local) continue;
        for (std::size_t y = 0; y < 32; ++y) {
            for (std::size_t x = 0; x < 32; ++x) {
                REQUIRE(r.image.at(x, y) == (r.record.rect->contains(x, y) ? img.at(x, y) : gray.at(x, y)));
            }
        }
    }
}
