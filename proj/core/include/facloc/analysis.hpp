#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "facloc/configuration.hpp"
#include "facloc/grid.hpp"

namespace facloc::analysis {

/// Scaling summary of a positive series: fitted decay exponent of a log-log
/// least-squares line, its RMS residual, and the min/max/amplitude of
/// n^alpha * value over the trailing window [n/2, n].
struct SeriesReport {
    std::vector<double> n;
    std::vector<double> value;
    double alpha = 0.0;
    double residual = 0.0;
    double window_min = 0.0;
    double window_max = 0.0;
    double window_amplitude = 0.0;
};

/// Least-squares slope of log(value) against log(n), negated. Requires at
/// least 5 points and strictly positive values.
std::pair<double, double> fit_exponent(std::span<const double> n,
                                       std::span<const double> value);

SeriesReport make_report(std::vector<double> n, std::vector<double> value);

/// r_k = 4 k s_k for k = 1..n_max from the exact uniform engine, with
/// trailing-window min/max as liminf/limsup estimates.
SeriesReport ratio_series(long n_max);

struct RecursiveBoundResult {
    bool holds = false;
    double bound = 0.0;         // B = max(a_1, (1/(dC))^(1/d))
    long first_violation = -1;  // index of the first failed check, or -1
};

/// Verifies a_{k+1} <= a_k - C a_k^(d+1) for the whole series and then
/// a_k <= B k^(-1/d) with B = max(a_1, (1/(dC))^(1/d)).
RecursiveBoundResult check_recursive_bound(std::span<const double> a, double C, int d);

/// (#points)^(1/d) * average distance: the quantity with a finite limit.
double rescaled_cost(const DensityGrid& grid, const Configuration& config);

/// Union of closed intervals on the line.
struct Region {
    std::string label;
    std::vector<std::pair<double, double>> parts;
    bool contains(double x) const;
};

struct RegionCount {
    std::string label;
    long count = 0;
    double fraction = 0.0;
};

/// Counts points per region; a point on a shared boundary goes to the first
/// region listing it. Regions overlapping in more than endpoints are rejected.
std::vector<RegionCount> region_histogram(std::span<const double> points,
                                          const std::vector<Region>& regions);

/// The nested boundary regions of [0,1] for j = 0..j_max, in index order.
std::vector<Region> boundary_regions(int j_max);

/// k equal-width bins over [lo, hi].
std::vector<Region> uniform_bins(double lo, double hi, int k);

}  // namespace facloc::analysis
