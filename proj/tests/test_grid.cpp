#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "facloc/grid.hpp"

using namespace facloc;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/facloc_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("uniform grid normalizes to equal masses") {
    auto g = DensityGrid::uniform(BoxDomain::unit_interval(), {10});
    REQUIRE(g.num_cells() == 10);
    for (long q = 0; q < 10; ++q) CHECK(g.weight(q) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g.cell_width(0) == doctest::Approx(0.1));
    CHECK(g.cell_center(0)[0] == doctest::Approx(0.05));

    auto sq = DensityGrid::uniform(BoxDomain::unit_square(), {200, 200});
    REQUIRE(sq.num_cells() == 40000);
    CHECK(sq.weight(123) == doctest::Approx(2.5e-5).epsilon(1e-12));

    auto g4 = DensityGrid::uniform(BoxDomain({0.0}, {4.0}), {4});
    for (long q = 0; q < 4; ++q) CHECK(g4.weight(q) == doctest::Approx(0.25));
}

TEST_CASE("density file round trip and header parsing") {
    std::string path = write_temp("uniform4.txt",
                                  "# comment line\n"
                                  "1 4\n"
                                  "0 1\n"
                                  "1 1 1 1\n");
    auto g = DensityGrid::load(path);
    REQUIRE(g.dim() == 1);
    REQUIRE(g.num_cells() == 4);
    for (long q = 0; q < 4; ++q) CHECK(g.weight(q) == doctest::Approx(0.25));
    CHECK(g.raw_mass() == doctest::Approx(4.0));
    std::remove(path.c_str());
}

TEST_CASE("two-block density has unit mass without rescaling") {
    // f = 1/2 on [0,1], 0 on (1,2), 1/4 on [2,4]; cell masses f(center)/cellWidth.
    const int m = 4000;
    std::string content = "1 " + std::to_string(m) + "\n0 4\n";
    double w = 4.0 / m;
    for (int q = 0; q < m; ++q) {
        double c = (q + 0.5) * w;
        double f = c < 1.0 ? 0.5 : (c > 2.0 ? 0.25 : 0.0);
        content += std::to_string(f * w) + "\n";
    }
    std::string path = write_temp("twoblock.txt", content);
    auto g = DensityGrid::load(path);
    CHECK(g.raw_mass() == doctest::Approx(1.0).epsilon(1e-9));
    std::remove(path.c_str());
}

TEST_CASE("malformed density files are rejected") {
    std::string neg = write_temp("neg.txt", "1 2\n0 1\n0.5 -0.5\n");
    CHECK_THROWS_AS(DensityGrid::load(neg), ParseError);
    std::remove(neg.c_str());

    std::string short_rows = write_temp("short.txt", "1 4\n0 1\n1 1 1\n");
    CHECK_THROWS_AS(DensityGrid::load(short_rows), ParseError);
    std::remove(short_rows.c_str());

    std::string bad_header = write_temp("badh.txt", "0 4\n0 1\n1 1 1 1\n");
    CHECK_THROWS_AS(DensityGrid::load(bad_header), ParseError);
    std::remove(bad_header.c_str());

    CHECK_THROWS_AS(DensityGrid::load("/tmp/facloc_no_such_file.txt"), ParseError);
}

TEST_CASE("renormalization is scale invariant") {
    std::vector<double> w1 = {0.1, 0.4, 0.2, 0.3};
    std::vector<double> w2 = {0.1 * 7.3, 0.4 * 7.3, 0.2 * 7.3, 0.3 * 7.3};
    DensityGrid a(BoxDomain::unit_interval(), {4}, w1);
    DensityGrid b(BoxDomain::unit_interval(), {4}, w2);
    for (long q = 0; q < 4; ++q)
        CHECK(a.weight(q) == doctest::Approx(b.weight(q)).epsilon(1e-14));
}

TEST_CASE("cell indexing is row major with the last axis fastest") {
    auto g = DensityGrid::uniform(BoxDomain::unit_square(), {2, 3});
    auto c0 = g.cell_center(0);
    auto c1 = g.cell_center(1);
    CHECK(c0[0] == doctest::Approx(0.25));
    CHECK(c0[1] == doctest::Approx(1.0 / 6));
    CHECK(c1[0] == doctest::Approx(0.25));  // same row
    CHECK(c1[1] == doctest::Approx(0.5));   // next column
    CHECK(g.cell_of(std::vector<double>{0.26, 0.51}) == 1);
}
