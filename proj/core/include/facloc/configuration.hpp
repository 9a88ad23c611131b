#pragma once

#include <span>
#include <vector>

#include "facloc/grid.hpp"

namespace facloc {

/// Finite ordered point set together with the distance field
/// delta(q) = min_p |q - p| cached at the cell centers of a grid.
/// Value type: insert_point returns a new Configuration.
class Configuration {
public:
    explicit Configuration(const DensityGrid& grid);

    int dim() const { return dim_; }
    long size() const { return static_cast<long>(points_.size()) / dim_; }
    bool empty() const { return points_.empty(); }
    std::span<const double> point(long i) const { return {points_.data() + i * dim_, static_cast<size_t>(dim_)}; }
    const std::vector<double>& flat_points() const { return points_; }
    const std::vector<double>& distance_field() const { return distance_; }
    /// Max of the distance field; +inf while empty.
    double max_distance() const { return max_distance_; }

private:
    friend Configuration insert_point(const DensityGrid&, const Configuration&, std::span<const double>);
    int dim_;
    std::vector<double> points_;    // flat, stride = dim_
    std::vector<double> distance_;  // aligned with grid cells
    double max_distance_;
};

/// New configuration with x0 appended; distance field min-updated in O(cells).
Configuration insert_point(const DensityGrid& grid, const Configuration& config,
                           std::span<const double> x0);

/// Average distance to the nearest point: sum_q w_q * delta(q).
/// Compensated summation; deterministic. Throws on an empty configuration.
double average_distance(const DensityGrid& grid, const Configuration& config);

/// Exact decrease of average_distance from inserting x0:
/// sum_q w_q * max(0, delta(q) - |q - x0|). Scans only the cells within
/// max_distance() of x0. Throws if the configuration is empty or x0 outside.
double insertion_gain(const DensityGrid& grid, const Configuration& config,
                      std::span<const double> x0);

}  // namespace facloc
