#include <doctest.h>

#include <cmath>
#include <random>

#include "facloc/configuration.hpp"
#include "facloc/grid.hpp"
#include "helpers.hpp"

using namespace facloc;
using facloc_test::config_with;
using facloc_test::two_block_grid;

TEST_CASE("average distance of the uniform median is 1/4") {
    auto g = DensityGrid::uniform(BoxDomain::unit_interval(), {20000});
    auto cfg = config_with(g, {{0.5}});
    CHECK(average_distance(g, cfg) == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("two-block density reproduces the seeding and branch costs") {
    auto g = two_block_grid();
    CHECK(average_distance(g, config_with(g, {{1.0}})) == doctest::Approx(1.25).epsilon(1e-9));
    CHECK(average_distance(g, config_with(g, {{2.0}})) == doctest::Approx(1.25).epsilon(1e-9));
    CHECK(average_distance(g, config_with(g, {{1.0}, {3.0}})) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(average_distance(g, config_with(g, {{0.5}, {2.0}})) == doctest::Approx(0.625).epsilon(1e-9));
}

TEST_CASE("average distance requires a nonempty configuration") {
    auto g = DensityGrid::uniform(BoxDomain::unit_interval(), {16});
    Configuration empty(g);
    CHECK_THROWS_AS(average_distance(g, empty), std::invalid_argument);
    CHECK(empty.distance_field()[0] == doctest::Approx(std::numeric_limits<double>::infinity()));
}

TEST_CASE("insert_point updates the distance field and never increases cost") {
    auto g = DensityGrid::uniform(BoxDomain::unit_interval(), {5000});
    auto cfg = config_with(g, {{0.5}});
    double before = average_distance(g, cfg);

    SUBCASE("coincident point leaves the cost unchanged") {
        auto cfg2 = insert_point(g, cfg, std::vector<double>{0.5});
        CHECK(average_distance(g, cfg2) == doctest::Approx(before).epsilon(1e-14));
    }
    SUBCASE("inserting at 1/6 drops the cost from 1/4 to 1/6") {
        auto cfg2 = insert_point(g, cfg, std::vector<double>{1.0 / 6});
        CHECK(average_distance(g, cfg2) == doctest::Approx(1.0 / 6).epsilon(1e-6));
    }
    SUBCASE("random insertions are monotone") {
        std::mt19937_64 rng(7);
        Configuration c(g);
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 12; ++i) {
            double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            c = insert_point(g, c, std::span<const double>(&x, 1));
            double cost = average_distance(g, c);
            CHECK(cost <= prev + 1e-14);
            prev = cost;
        }
    }
    SUBCASE("out-of-domain point is rejected") {
        CHECK_THROWS_AS(insert_point(g, cfg, std::vector<double>{1.5}), std::invalid_argument);
    }
}

TEST_CASE("insert into empty config gives the plain distance field") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {20, 20});
    Configuration empty(g);
    auto cfg = insert_point(g, empty, std::vector<double>{0.3, 0.7});
    for (long q = 0; q < g.num_cells(); ++q) {
        auto c = g.cell_center(q);
        double dx = c[0] - 0.3, dy = c[1] - 0.7;
        CHECK(cfg.distance_field()[q] == doctest::Approx(std::sqrt(dx * dx + dy * dy)));
    }
}

TEST_CASE("distance field is 1-Lipschitz across adjacent cells") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {32, 32});
    auto cfg = config_with(g, {{0.21, 0.8}, {0.7, 0.33}});
    const auto& delta = cfg.distance_field();
    for (int i = 0; i < 32; ++i) {
        for (int j = 0; j + 1 < 32; ++j) {
            double step = g.cell_width(1);
            CHECK(std::abs(delta[i * 32 + j] - delta[i * 32 + j + 1]) <= step + 1e-12);
        }
    }
}

TEST_CASE("uniform midpoint configurations approach cost 1/(4n)") {
    for (long n : {1L, 3L, 7L}) {
        double prev_err = 1.0;
        for (long m : {500L, 1000L, 2000L}) {
            auto g = DensityGrid::uniform(BoxDomain::unit_interval(), {static_cast<int>(m)});
            Configuration cfg(g);
            for (long i = 1; i <= n; ++i) {
                double x = (2.0 * i - 1) / (2.0 * n);
                cfg = insert_point(g, cfg, std::span<const double>(&x, 1));
            }
            double err = std::abs(average_distance(g, cfg) - 0.25 / n);
            CHECK(err <= g.max_cell_width());
            CHECK(err <= prev_err + 1e-12);
            prev_err = err;
        }
    }
}

TEST_CASE("insertion_gain equals the cost difference") {
    auto g = two_block_grid(1000);
    auto cfg = config_with(g, {{1.0}});
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        double x = 4.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double gain = insertion_gain(g, cfg, std::span<const double>(&x, 1));
        auto cfg2 = insert_point(g, cfg, std::span<const double>(&x, 1));
        double diff = average_distance(g, cfg) - average_distance(g, cfg2);
        CHECK(gain == doctest::Approx(diff).epsilon(1e-10));
        CHECK(gain >= -1e-15);
    }
}

TEST_CASE("insertion_gain in 2-D matches the cost difference") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {25, 25});
    auto cfg = config_with(g, {{0.25, 0.25}, {0.8, 0.6}});
    double base = average_distance(g, cfg);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> x = {static_cast<double>(rng() >> 11) * 0x1.0p-53,
                                 static_cast<double>(rng() >> 11) * 0x1.0p-53};
        double gain = insertion_gain(g, cfg, x);
        double diff = base - average_distance(g, insert_point(g, cfg, x));
        CHECK(gain == doctest::Approx(diff).epsilon(1e-9));
    }
}
