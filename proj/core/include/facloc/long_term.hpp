#pragma once

#include <cstdint>
#include <vector>

#include "facloc/configuration.hpp"
#include "facloc/grid.hpp"

namespace facloc::longterm {

enum class Method { ClosedForm1D, DP1D, Lloyd, BruteForce };

struct LongTermSolution {
    std::vector<std::vector<double>> points;
    double cost = 0.0;
    Method method = Method::ClosedForm1D;
    int restarts = 0;
};

/// Uniform measure on [0,1]: midpoints (2i-1)/(2n), cost 1/(4n).
LongTermSolution solve_uniform_1d(long n);

/// Globally optimal n-point placement on the discretized 1-D problem
/// (facilities restricted to cell centers), O(m^2 n) dynamic program.
LongTermSolution solve_dp_1d(const DensityGrid& grid, long n);
/// All optima for 1..n_max from a single DP run.
std::vector<LongTermSolution> solve_dp_1d_all(const DensityGrid& grid, long n_max);

/// Alternating assignment / per-group geometric-median (Weiszfeld) descent,
/// best of `restarts` initializations sampled from the measure.
LongTermSolution solve_lloyd(const DensityGrid& grid, long n, int restarts = 8,
                             std::uint64_t seed = 0);

/// Exhaustive search over candidate cell centers; n <= 3 only.
LongTermSolution solve_brute_force(const DensityGrid& grid, long n);

/// Weighted geometric median of (center, weight) pairs by damped Weiszfeld
/// iteration with the usual fixed-point guard at data nodes.
std::vector<double> geometric_median(std::span<const double> flat_points, int dim,
                                     std::span<const double> weights,
                                     std::span<const double> start);

/// Dimensional constant of the scaling law: 1/4 in d=1,
/// (3 ln 3 + 4) / (6 sqrt(2) 3^(3/4)) in d=2.
double theta(int d);

/// Asymptotic batch-optimal cost n^(-1/d) * theta_d * (integral f^(d/(d+1)))^((d+1)/d).
double limit_cost(const DensityGrid& grid, long n);

/// Normalized density proportional to f^(d/(d+1)): the distribution that
/// batch-optimal configurations approach.
DensityGrid limit_density(const DensityGrid& grid);

}  // namespace facloc::longterm
