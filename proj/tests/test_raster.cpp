#include <doctest.h>

#include "support/testutil.hpp"
#include "textexpand/raster.hpp"
#include "textexpand/selfcheck.hpp"

using namespace textexpand;

namespace {

BitMask mask_from_pixels(int w, int h, const std::vector<std::pair<int, int>>& pixels) {
    BitMask m(w, h, 0);
    for (const auto& [x, y] : pixels) m.set(x, y, true);
    return m;
}

std::size_t boundary_pixel_count(const BitMask& mask) {
    std::size_t n = 0;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y)) continue;
            bool boundary = x == 0 || y == 0 || x == mask.width() - 1 || y == mask.height() - 1;
            if (!boundary) {
                boundary = !mask.at(x - 1, y) || !mask.at(x + 1, y) || !mask.at(x, y - 1) ||
                           !mask.at(x, y + 1);
            }
            if (boundary) ++n;
        }
    }
    return n;
}

}  // namespace

TEST_SUITE("raster") {

TEST_CASE("rasterize_polygon pixel-center rule") {
    const BitMask mask = rasterize_polygon({{1, 1}, {3, 1}, {3, 3}, {1, 3}}, 4, 4);
    CHECK(mask.count_set() == 4);
    CHECK(mask.at(1, 1));
    CHECK(mask.at(2, 1));
    CHECK(mask.at(1, 2));
    CHECK(mask.at(2, 2));
}

TEST_CASE("rasterize_polygon degenerate and full-cover inputs") {
    CHECK(rasterize_polygon({{1, 1}, {3, 3}, {2, 2}}, 8, 8).count_set() == 0);
    CHECK(rasterize_polygon({{0, 0}, {8, 0}, {8, 8}, {0, 8}}, 8, 8).count_set() == 64);
    CHECK(rasterize_polygon({{100, 100}, {103, 100}, {103, 103}, {100, 103}}, 8, 8).count_set() ==
          0);
}

TEST_CASE("rasterize_polygon half-open boundary ownership") {
    // Centers at 5.5 sit on the left/top edges (owned); 10.5 on right/bottom
    // edges (not owned): a 5x5 block.
    const BitMask mask =
        rasterize_polygon({{5.5, 5.5}, {10.5, 5.5}, {10.5, 10.5}, {5.5, 10.5}}, 16, 16);
    CHECK(mask.count_set() == 25);
    for (int y = 5; y <= 9; ++y) {
        for (int x = 5; x <= 9; ++x) CHECK(mask.at(x, y));
    }
}

TEST_CASE("rasterization is monotone over nested offsets") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const Polygon poly = random_convex_polygon(rng, {32, 32}, 8, 14, 4, 8, 25.0);
        const double d1 = rng.next_range(0.5, 2.0);
        const double d2 = d1 + rng.next_range(0.5, 2.0);
        const BitMask inner = rasterize_polygon(expand_polygon(poly, d1), 64, 64);
        const BitMask outer = rasterize_polygon(expand_polygon(poly, d2), 64, 64);
        CHECK(outer.contains(inner));
    }
}

TEST_CASE("connected_components counts blobs") {
    const BitMask two = mask_from_pixels(8, 3, {{1, 1}, {2, 1}, {5, 1}, {6, 1}});
    CHECK(connected_components(two, 8).count == 2);

    const BitMask diagonal = mask_from_pixels(4, 4, {{1, 1}, {2, 2}});
    CHECK(connected_components(diagonal, 8).count == 1);
    CHECK(connected_components(diagonal, 4).count == 2);

    CHECK(connected_components(BitMask(5, 5, 0), 8).count == 0);
    CHECK_THROWS_AS(connected_components(two, 6), std::invalid_argument);
}

TEST_CASE("connected_components labels in raster-scan order and partitions set pixels") {
    const BitMask mask = mask_from_pixels(8, 8, {{6, 0}, {1, 2}, {2, 2}, {6, 1}});
    const LabelGrid labels = connected_components(mask, 8);
    CHECK(labels.count == 2);
    CHECK(labels.at(6, 0) == 1);  // first in raster order
    CHECK(labels.at(1, 2) == 2);

    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        BitMask random_mask(12, 9, 0);
        for (std::size_t i = 0; i < random_mask.size(); ++i) {
            random_mask.set_bit(i, rng.next_double() < 0.4);
        }
        const LabelGrid lg = connected_components(random_mask, 8);
        std::vector<bool> seen(static_cast<std::size_t>(lg.count) + 1, false);
        for (int y = 0; y < 9; ++y) {
            for (int x = 0; x < 12; ++x) {
                CHECK((lg.at(x, y) != 0) == random_mask.at(x, y));
                if (lg.at(x, y) > 0) seen[static_cast<std::size_t>(lg.at(x, y))] = true;
            }
        }
        for (int l = 1; l <= lg.count; ++l) CHECK(seen[static_cast<std::size_t>(l)]);

        // Transposition cannot change the number of components.
        BitMask transposed(9, 12, 0);
        for (int y = 0; y < 9; ++y) {
            for (int x = 0; x < 12; ++x) transposed.set(y, x, random_mask.at(x, y));
        }
        CHECK(connected_components(transposed, 8).count == lg.count);
    }
}

TEST_CASE("trace_contour of a solid block reproduces it exactly") {
    const BitMask block = rasterize_polygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}}, 8, 8);
    const LabelGrid labels = connected_components(block, 8);
    const Polygon contour = trace_contour(labels, 1);
    CHECK(contour.size() == 4);
    CHECK(signed_area(contour) == doctest::Approx(9.0));
    const BitMask back = rasterize_polygon(contour, 8, 8);
    CHECK(back.contains(block));
    CHECK(block.contains(back));
}

TEST_CASE("trace_contour of a thin bar covers the bar") {
    const BitMask bar = mask_from_pixels(8, 4, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
    const LabelGrid labels = connected_components(bar, 8);
    const Polygon contour = trace_contour(labels, 1);
    const BitMask back = rasterize_polygon(contour, 8, 4);
    CHECK(back.contains(bar));
    CHECK(back.count_set() == bar.count_set());
}

TEST_CASE("trace_contour handles single pixels and rejects unknown labels") {
    const BitMask dot = mask_from_pixels(4, 4, {{2, 1}});
    const LabelGrid labels = connected_components(dot, 8);
    const Polygon contour = trace_contour(labels, 1);
    CHECK(signed_area(contour) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trace_contour(labels, 2), std::invalid_argument);
    CHECK_THROWS_AS(trace_contour(labels, 0), std::invalid_argument);
}

TEST_CASE("trace_contour keeps diagonally linked cells on one ring") {
    const BitMask pair = mask_from_pixels(4, 4, {{1, 1}, {2, 2}});
    const LabelGrid labels = connected_components(pair, 8);
    const Polygon contour = trace_contour(labels, 1);
    const BitMask back = rasterize_polygon(contour, 4, 4);
    CHECK(back.contains(pair));
}

TEST_CASE("contour roundtrip error stays within the boundary band") {
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        const Polygon poly = random_convex_polygon(rng, {32, 32}, 8, 20, 4, 9, 25.0);
        const BitMask component = rasterize_polygon(poly, 64, 64);
        if (component.count_set() == 0) continue;
        const LabelGrid labels = connected_components(component, 8);
        REQUIRE(labels.count == 1);
        const BitMask back = rasterize_polygon(trace_contour(labels, 1), 64, 64);
        std::size_t mismatch = 0;
        for (std::size_t i = 0; i < back.size(); ++i) {
            if (back.bit(i) != component.bit(i)) ++mismatch;
        }
        CHECK(mismatch <= 2 * boundary_pixel_count(component));
        CHECK(mismatch == 0);  // pixel-edge contours are exact for hole-free blobs
    }
}

TEST_CASE("distance_transform worked examples") {
    const BitMask dot = mask_from_pixels(5, 5, {{2, 2}});
    const Grid dist = distance_transform(dot);
    CHECK(dist.at(2, 4) == doctest::Approx(2.0));
    CHECK(dist.at(2, 2) == 0.0);
    CHECK(dist.at(0, 0) == doctest::Approx(std::sqrt(8.0)));

    CHECK(distance_transform(BitMask(4, 4, 1)).at(3, 1) == 0.0);

    const Grid empty = distance_transform(BitMask(4, 4, 0));
    for (std::size_t i = 0; i < empty.size(); ++i) {
        CHECK(empty.value(i) == distance_sentinel(4, 4));
    }
}

TEST_CASE("distance_transform equals brute force exactly") {
    const PropertyStats stats = check_distance_transform(120, 9);
    INFO(stats.first_failure);
    CHECK(stats.failures == 0);
}

}  // TEST_SUITE
