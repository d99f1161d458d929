#include <doctest.h>

#include <cmath>

#include "support/testutil.hpp"
#include "textexpand/losses.hpp"

using namespace textexpand;

namespace {

Grid constant_grid(int w, int h, double v) { return Grid(w, h, v); }

Grid random_unit_grid(int w, int h, Rng& rng) {
    Grid g(w, h, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) g.set_value(i, rng.next_double());
    return g;
}

BitMask random_mask(int w, int h, double density, Rng& rng) {
    BitMask m(w, h, 0);
    for (std::size_t i = 0; i < m.size(); ++i) m.set_bit(i, rng.next_double() < density);
    return m;
}

}  // namespace

TEST_SUITE("losses") {

TEST_CASE("dice of a perfect binary prediction is 1") {
    Rng rng(1);
    const BitMask target = random_mask(6, 6, 0.4, rng);
    const Grid g = to_grid(target);
    CHECK(dice(g, g, BitMask(6, 6, 1)) == doctest::Approx(1.0));
}

TEST_CASE("dice of disjoint supports is epsilon-scale") {
    Grid r(4, 4, 0.0);
    Grid g(4, 4, 0.0);
    r.set(0, 0, 1.0);
    g.set(3, 3, 1.0);
    CHECK(dice(r, g, BitMask(4, 4, 1)) <= 1e-6);
}

TEST_CASE("dice of a half-confident prediction is 0.8") {
    const Grid r = constant_grid(5, 5, 0.5);
    const Grid g = constant_grid(5, 5, 1.0);
    CHECK(dice(r, g, BitMask(5, 5, 1)) == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("dice over an empty mask is 1 and shapes must match") {
    const Grid r = constant_grid(4, 4, 0.3);
    CHECK(dice(r, r, BitMask(4, 4, 0)) == 1.0);
    CHECK_THROWS_AS(dice(r, constant_grid(5, 4, 0.0), BitMask(4, 4, 1)), std::invalid_argument);
}

TEST_CASE("dice is symmetric") {
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        const Grid a = random_unit_grid(6, 6, rng);
        const Grid b = random_unit_grid(6, 6, rng);
        const BitMask m = random_mask(6, 6, 0.7, rng);
        CHECK(dice(a, b, m) == doctest::Approx(dice(b, a, m)));
    }
}

TEST_CASE("ohem selects all positives plus the hardest negatives") {
    // 4 positives, 100 negatives: 4 + 12 pixels, exactly the top-12 scores.
    Grid score(13, 8, 0.0);
    BitMask positives(13, 8, 0);
    for (int i = 0; i < 4; ++i) positives.set(i, 0, true);
    Rng rng(3);
    for (std::size_t i = 4; i < score.size(); ++i) score.set_value(i, rng.next_double());
    const BitMask train(13, 8, 1);

    const BitMask selected = ohem_mask(score, positives, train, 3);
    CHECK(selected.count_set() == 16);
    CHECK(selected == testutil::brute_force_ohem(score, positives, train, 3));
}

TEST_CASE("ohem falls back to the train mask without positives") {
    const Grid score(6, 6, 0.9);
    const BitMask none(6, 6, 0);
    BitMask train(6, 6, 1);
    train.set(2, 2, false);
    CHECK(ohem_mask(score, none, train, 3) == train);
}

TEST_CASE("ohem equals brute force on random cases") {
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        const int w = 5 + static_cast<int>(rng.next_below(12));
        const int h = 5 + static_cast<int>(rng.next_below(12));
        const Grid score = random_unit_grid(w, h, rng);
        const BitMask positives = random_mask(w, h, rng.next_range(0.0, 0.4), rng);
        const BitMask train = random_mask(w, h, 0.9, rng);
        const int neg_ratio = 1 + static_cast<int>(rng.next_below(4));
        const BitMask got = ohem_mask(score, positives, train, neg_ratio);
        const BitMask want = testutil::brute_force_ohem(score, positives, train, neg_ratio);
        CHECK(got == want);
    }
}

TEST_CASE("ohem selected-negative count matches the ratio rule") {
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        const Grid score = random_unit_grid(10, 10, rng);
        const BitMask positives = random_mask(10, 10, 0.3, rng);
        const BitMask train(10, 10, 1);
        std::size_t pos = 0, neg = 0;
        for (std::size_t i = 0; i < positives.size(); ++i) {
            (positives.bit(i) ? pos : neg) += 1;
        }
        if (pos == 0) continue;
        const BitMask sel = ohem_mask(score, positives, train, 3);
        CHECK(sel.count_set() - pos == std::min(neg, 3 * pos));
    }
}

TEST_CASE("loss_complete worked cases") {
    // Perfect prediction.
    BitMask target(4, 4, 0);
    for (int i = 0; i < 4; ++i) target.set(i, 0, true);
    const BitMask train(4, 4, 1);
    CHECK(loss_complete(to_grid(target), target, train) == doctest::Approx(0.0).epsilon(1e-9));

    // Half-confident prediction over 4 positives and 4 negatives:
    // dice = 2*(0.5*4) / (0.25*8 + 4) = 2/3, loss = 1/3.
    BitMask small_target(8, 1, 0);
    for (int i = 0; i < 4; ++i) small_target.set(i, 0, true);
    const Grid half = constant_grid(8, 1, 0.5);
    CHECK(loss_complete(half, small_target, BitMask(8, 1, 1)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-6));

    // Inverted prediction.
    Grid inverted = to_grid(target);
    for (std::size_t i = 0; i < inverted.size(); ++i) inverted.set_value(i, 1.0 - inverted.value(i));
    CHECK(loss_complete(inverted, target, train) > 0.999);
}

TEST_CASE("loss_central gates by the complete prediction") {
    Rng rng(6);
    const BitMask target = random_mask(6, 6, 0.4, rng);
    const Grid perfect = to_grid(target);
    const BitMask train(6, 6, 1);

    CHECK(loss_central(perfect, target, constant_grid(6, 6, 0.9), train) ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(loss_central(perfect, target, constant_grid(6, 6, 0.1), train) == 0.0);

    // W = left half, prediction 0.5 against target 1 inside W: 1 - 0.8.
    Grid gate(6, 6, 0.0);
    BitMask ones(6, 6, 1);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 3; ++x) gate.set(x, y, 1.0);
    }
    CHECK(loss_central(constant_grid(6, 6, 0.5), ones, gate, train) ==
          doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("smooth_l1 worked values and continuity") {
    CHECK(smooth_l1(0.5) == doctest::Approx(0.125));
    CHECK(smooth_l1(2.0) == doctest::Approx(1.5));
    CHECK(smooth_l1(1.0) == doctest::Approx(0.5));
    CHECK(smooth_l1(-1.0) == doctest::Approx(0.5));
    CHECK(smooth_l1(1.0 - 1e-9) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("loss_ratio sums smooth-l1 over eligible central pixels") {
    const Grid q = constant_grid(4, 4, 2.0);
    CHECK(loss_ratio(q, q, BitMask(4, 4, 1), BitMask(4, 4, 1)) == 0.0);

    Grid p = q;
    p.set(1, 1, 2.5);
    BitMask central(4, 4, 0);
    central.set(1, 1, true);
    central.set(2, 2, true);
    CHECK(loss_ratio(p, q, central, BitMask(4, 4, 1)) == doctest::Approx(0.125));
    CHECK(loss_ratio(p, q, central, BitMask(4, 4, 1), true) == doctest::Approx(0.0625));
    CHECK(loss_ratio(p, q, BitMask(4, 4, 0), BitMask(4, 4, 1)) == 0.0);
}

TEST_CASE("total_loss applies the configured weights") {
    const LossWeights defaults;
    CHECK(defaults.complete == 0.5);
    CHECK(defaults.central == 0.25);
    CHECK(defaults.ratio == 0.25);

    const LossReport report = total_loss(0.4, 0.2, 1.6, defaults, 12);
    CHECK(report.total == doctest::Approx(0.5 * 0.4 + 0.25 * 0.2 + 0.25 * 1.6));
    CHECK(report.ohem_selected == 12);
    CHECK(total_loss(0.0, 0.0, 0.0).total == 0.0);

    const LossWeights thirds{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    CHECK_NOTHROW(thirds.validate());
    CHECK_THROWS_AS(total_loss(0.1, 0.1, 0.1, LossWeights{0.333, 0.333, 0.333}),
                    std::invalid_argument);
    CHECK_THROWS_AS(total_loss(0.1, 0.1, 0.1, LossWeights{0.9, 0.3, -0.2}),
                    std::invalid_argument);
}

TEST_CASE("total_loss is linear in each component") {
    const LossWeights w{0.5, 0.25, 0.25};
    const double base = total_loss(0.3, 0.6, 0.9, w).total;
    CHECK(total_loss(0.3 + 1.0, 0.6, 0.9, w).total == doctest::Approx(base + 0.5));
    CHECK(total_loss(0.3, 0.6 + 1.0, 0.9, w).total == doctest::Approx(base + 0.25));
    CHECK(total_loss(0.3, 0.6, 0.9 + 1.0, w).total == doctest::Approx(base + 0.25));
}

TEST_CASE("dice_grad matches central finite differences") {
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        Grid r = random_unit_grid(6, 6, rng);
        const Grid g = random_unit_grid(6, 6, rng);
        const BitMask mask = random_mask(6, 6, 0.8, rng);
        const Grid grad = dice_grad(r, g, mask);

        for (int y = 0; y < 6; ++y) {
            for (int x = 0; x < 6; ++x) {
                if (!mask.at(x, y)) {
                    CHECK(grad.at(x, y) == 0.0);
                    continue;
                }
                const double fd = testutil::central_difference(
                    [&](double v) {
                        Grid probe = r;
                        probe.set(x, y, v);
                        return dice(probe, g, mask);
                    },
                    r.at(x, y), 1e-5);
                const double denom = std::max(std::abs(fd), 1e-6);
                CHECK(std::abs(grad.at(x, y) - fd) / denom < 1e-4);
            }
        }
    }
}

TEST_CASE("dice_grad vanishes on a saturated prediction") {
    Rng rng(8);
    const BitMask target = random_mask(6, 6, 0.5, rng);
    const Grid grad = dice_grad(to_grid(target), to_grid(target), BitMask(6, 6, 1));
    for (std::size_t i = 0; i < grad.size(); ++i) {
        CHECK(std::abs(grad.value(i)) < 1e-6);
    }
    CHECK(dice_grad(to_grid(target), to_grid(target), BitMask(6, 6, 0)) == Grid(6, 6, 0.0));
}

TEST_CASE("smooth_l1_grad matches central finite differences") {
    Rng rng(9);
    for (int t = 0; t < 200; ++t) {
        const double x = rng.next_range(-3.0, 3.0);
        if (std::abs(std::abs(x) - 1.0) < 1e-3) continue;  // kink
        const double fd =
            testutil::central_difference([](double v) { return smooth_l1(v); }, x, 1e-5);
        CHECK(std::abs(smooth_l1_grad(x) - fd) / std::max(std::abs(fd), 1e-6) < 1e-4);
    }
}

}  // TEST_SUITE
