#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "facloc/exact_sequence.hpp"
#include "facloc/greedy.hpp"
#include "helpers.hpp"

using namespace facloc;
using facloc_test::config_with;

TEST_CASE("exact gain basics") {
    auto g = DensityGrid::uniform(BoxDomain::unit_interval(), {20000});
    auto cfg = config_with(g, {{0.5}});
    SUBCASE("zero at an existing point") {
        CHECK(greedy::exact_gain(g, cfg, std::vector<double>{0.5}) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("the boundary third gains (1/2)^2/3") {
        CHECK(greedy::exact_gain(g, cfg, std::vector<double>{1.0 / 6}) ==
              doctest::Approx(1.0 / 12).epsilon(1e-4));
    }
    SUBCASE("gain dominates the ball mass lower bound at every cell") {
        auto gs = DensityGrid::uniform(BoxDomain::unit_interval(), {500});
        auto c2 = config_with(gs, {{0.5}});
        const auto& delta = c2.distance_field();
        for (long q = 0; q < gs.num_cells(); ++q) {
            auto x0 = gs.cell_center(q);
            double d0 = delta[q];
            // mass of the ball of radius d0/4 around x0, from the same grid
            double ball = 0.0;
            for (long p = 0; p < gs.num_cells(); ++p)
                if (std::abs(gs.cell_center(p)[0] - x0[0]) < d0 / 4) ball += gs.weight(p);
            double lower = ball * d0 / 2;
            CHECK(greedy::exact_gain(gs, c2, x0) >= lower - 1e-12);
        }
    }
}

TEST_CASE("first greedy point is the 1-median of the square") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {50, 50});
    greedy::GreedyState st = greedy::run(g, 1);
    // Brute force over all singletons.
    double best = std::numeric_limits<double>::infinity();
    long arg = -1;
    for (long q = 0; q < g.num_cells(); ++q) {
        auto cfg = config_with(g, {g.cell_center(q)});
        double c = average_distance(g, cfg);
        if (c < best - 1e-12) {
            best = c;
            arg = q;
        }
    }
    CHECK(st.cost_history[0] == doctest::Approx(best).epsilon(1e-10));
    auto expect = g.cell_center(arg);
    auto got = st.config.point(0);
    // Lexicographic tie-breaking picks the lower-left of the central 4-tie.
    CHECK(got[0] == doctest::Approx(0.49));
    CHECK(got[1] == doctest::Approx(0.49));
    CHECK(std::abs(got[0] - expect[0]) <= g.cell_width(0) + 1e-12);
    CHECK(std::abs(got[1] - expect[1]) <= g.cell_width(1) + 1e-12);
}

TEST_CASE("1-D greedy on the grid tracks the exact engine") {
    auto g = DensityGrid::uniform(BoxDomain::unit_interval(), {5000});
    greedy::GreedyState st = greedy::run(g, 5);
    auto seq = exact1d::generate_sequence(5);
    for (long k = 1; k <= 5; ++k)
        CHECK(std::abs(st.cost_history[k - 1] - to_double(seq.cost(k))) <=
              2 * g.max_cell_width());
}

TEST_CASE("cost history decreases and gains match the bookkeeping") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {40, 40});
    greedy::GreedyState st = greedy::run(g, 12);
    REQUIRE(st.cost_history.size() == 12);
    for (size_t i = 1; i < st.cost_history.size(); ++i) {
        CHECK(st.cost_history[i] < st.cost_history[i - 1]);
        CHECK(st.gain_history[i] ==
              doctest::Approx(st.cost_history[i - 1] - st.cost_history[i]).epsilon(1e-12));
    }
    // The bookkept cost equals a fresh evaluation.
    CHECK(average_distance(g, st.config) == doctest::Approx(st.cost_history.back()).epsilon(1e-10));
}

TEST_CASE("greedy is deterministic across thread counts") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {30, 30});
    greedy::GreedyState a = greedy::run(g, 6, 1);
    greedy::GreedyState b = greedy::run(g, 6, 4);
    REQUIRE(a.config.size() == b.config.size());
    for (long i = 0; i < a.config.size(); ++i) {
        CHECK(a.config.point(i)[0] == b.config.point(i)[0]);
        CHECK(a.config.point(i)[1] == b.config.point(i)[1]);
    }
}

TEST_CASE("nine points on the square are diagonally symmetric") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {100, 100});
    greedy::GreedyState st = greedy::run(g, 9);
    double w = g.cell_width(0);
    for (long i = 0; i < 9; ++i) {
        auto p = st.config.point(i);
        double mx = p[1], my = p[0];  // mirror across the diagonal
        double best = std::numeric_limits<double>::infinity();
        for (long j = 0; j < 9; ++j) {
            auto q = st.config.point(j);
            best = std::min(best, std::hypot(q[0] - mx, q[1] - my));
        }
        CHECK(best <= 2 * w + 1e-12);
    }
}

TEST_CASE("rescaled greedy cost sits in the expected band") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {64, 64});
    greedy::GreedyState st = greedy::run(g, 300);
    double v = std::sqrt(300.0) * st.cost_history.back();
    CHECK(v >= 0.3);
    CHECK(v <= 0.6);
}
