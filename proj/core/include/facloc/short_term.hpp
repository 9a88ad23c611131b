#pragma once

#include <string>
#include <vector>

#include "facloc/configuration.hpp"
#include "facloc/grid.hpp"

namespace facloc::short1d {

enum class TieRule { Leftmost, Rightmost };

/// One incremental run: points in insertion order with the cost after each.
struct Trajectory {
    std::vector<double> points;
    std::vector<double> costs;
    std::string branch_label;
};

/// Result of one optimal single-point insertion.
struct Insertion {
    double x = 0.0;                // best refined position
    double cost = 0.0;             // cost after inserting x
    std::vector<double> tie_set;   // cell-center candidates within tolerance
    std::vector<double> choices;   // representative tied positions (ascending):
                                   // endpoints of each contiguous tied run, refined
    std::vector<double> choice_costs;
};

/// Best position for one additional point (d = 1): scan of all cell centers
/// followed by ternary refinement inside each tied run. The configuration may
/// be empty (seeding step). tie_tolerance is relative to the optimal cost.
Insertion best_insertion(const DensityGrid& grid, const Configuration& config,
                         double tie_tolerance = 1e-9);

/// n optimal insertions resolving ties with the given deterministic rule.
Trajectory run_trajectory(const DensityGrid& grid, long n, TieRule rule,
                          double tie_tolerance = 1e-9);

struct BranchSet {
    std::vector<Trajectory> branches;
    bool truncated = false;
};

/// Breadth-first expansion over tie choices, capped at max_branches leaves.
BranchSet enumerate_branches(const DensityGrid& grid, long n, long max_branches,
                             double tie_tolerance = 1e-9);

}  // namespace facloc::short1d
