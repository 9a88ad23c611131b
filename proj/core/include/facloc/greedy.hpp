#pragma once

#include <vector>

#include "facloc/configuration.hpp"
#include "facloc/grid.hpp"

namespace facloc::greedy {

/// Greedy incremental placement over the quadrature grid.
struct GreedyState {
    Configuration config;
    std::vector<double> cost_history;  // cost after k points, k = 1..size
    std::vector<double> gain_history;  // gain_history[k] = cost[k-1] - cost[k]; first entry 0

    explicit GreedyState(const DensityGrid& grid) : config(grid) {}
};

/// Decrease of the cost from inserting x0 (same contract as insertion_gain).
double exact_gain(const DensityGrid& grid, const Configuration& config,
                  std::span<const double> x0);

/// Adds the candidate cell center with the largest exact gain (the first
/// point minimizes the singleton cost). Ties within 1e-12 relative go to the
/// lexicographically smallest center. Deterministic for any thread count.
GreedyState add_best_point(const DensityGrid& grid, GreedyState state, int threads = 0);

/// n greedy insertions from scratch.
GreedyState run(const DensityGrid& grid, long n, int threads = 0);

}  // namespace facloc::greedy
