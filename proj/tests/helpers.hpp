#pragma once

#include <span>

#include "facloc/configuration.hpp"
#include "facloc/grid.hpp"

namespace facloc_test {

/// Two-block density on [0,4]: f = 1/2 on [0,1], 0 on (1,2), 1/4 on [2,4].
/// The seeding step has two optimal singletons ({1} and {2}) with cost 5/4,
/// and the two continuations end at different costs (1/2 vs 5/8).
inline facloc::DensityGrid two_block_grid(int cells = 4000) {
    return facloc::DensityGrid::from_density(
        facloc::BoxDomain({0.0}, {4.0}), {cells}, [](std::span<const double> c) {
            return c[0] < 1.0 ? 0.5 : (c[0] > 2.0 ? 0.25 : 0.0);
        });
}

inline facloc::Configuration config_with(const facloc::DensityGrid& grid,
                                         std::initializer_list<std::vector<double>> pts) {
    facloc::Configuration cfg(grid);
    for (const auto& p : pts) cfg = facloc::insert_point(grid, cfg, p);
    return cfg;
}

}  // namespace facloc_test
