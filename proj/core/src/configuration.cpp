#include "facloc/configuration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace facloc {

namespace {

double dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

Configuration::Configuration(const DensityGrid& grid)
    : dim_(grid.dim()),
      distance_(grid.num_cells(), std::numeric_limits<double>::infinity()),
      max_distance_(std::numeric_limits<double>::infinity()) {}

Configuration insert_point(const DensityGrid& grid, const Configuration& config,
                           std::span<const double> x0) {
    if (!grid.domain().contains(x0))
        throw std::invalid_argument("insert_point: point outside the domain");
    Configuration next = config;
    next.points_.insert(next.points_.end(), x0.begin(), x0.end());
    std::vector<double> c(grid.dim());
    double dmax = 0.0;
    for (long q = 0; q < grid.num_cells(); ++q) {
        grid.cell_center(q, c);
        double d = dist(c, x0);
        if (d < next.distance_[q]) next.distance_[q] = d;
        if (next.distance_[q] > dmax) dmax = next.distance_[q];
    }
    next.max_distance_ = dmax;
    return next;
}

double average_distance(const DensityGrid& grid, const Configuration& config) {
    if (config.empty())
        throw std::invalid_argument("average_distance: empty configuration");
    // Kahan summation: the result must not depend on grouping beyond 1e-12.
    const auto& w = grid.weights();
    const auto& delta = config.distance_field();
    double sum = 0.0, comp = 0.0;
    for (size_t q = 0; q < w.size(); ++q) {
        double term = w[q] * delta[q] - comp;
        double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum;
}

double insertion_gain(const DensityGrid& grid, const Configuration& config,
                      std::span<const double> x0) {
    if (config.empty())
        throw std::invalid_argument("insertion_gain: empty configuration");
    if (!grid.domain().contains(x0))
        throw std::invalid_argument("insertion_gain: point outside the domain");

    const int d = grid.dim();
    const double radius = config.max_distance();
    // Cells farther than max_distance from x0 cannot improve.
    std::vector<long> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        double w = grid.cell_width(i);
        double a = (x0[i] - radius - grid.domain().lo[i]) / w - 0.5;
        double b = (x0[i] + radius - grid.domain().lo[i]) / w - 0.5;
        lo[i] = std::max(0L, static_cast<long>(std::ceil(a)));
        hi[i] = std::min(static_cast<long>(grid.shape()[i]) - 1, static_cast<long>(std::floor(b)));
        if (lo[i] > hi[i]) return 0.0;
    }

    const auto& weights = grid.weights();
    const auto& delta = config.distance_field();
    double sum = 0.0, comp = 0.0;

    // Odometer over the window; the last axis is contiguous in the flat index.
    std::vector<long> idx(lo);
    std::vector<double> center(d);
    for (int i = 0; i < d; ++i)
        center[i] = grid.domain().lo[i] + (idx[i] + 0.5) * grid.cell_width(i);
    const int last = d - 1;
    const double wlast = grid.cell_width(last);
    while (true) {
        long base = 0;
        for (int i = 0; i < d; ++i) base = base * grid.shape()[i] + idx[i];
        double fixed = 0.0;
        for (int i = 0; i < last; ++i) {
            double dd = center[i] - x0[i];
            fixed += dd * dd;
        }
        double x = grid.domain().lo[last] + (lo[last] + 0.5) * wlast;
        for (long k = lo[last]; k <= hi[last]; ++k, x += wlast) {
            long q = base - idx[last] + k;
            double dd = x - x0[last];
            double d2 = fixed + dd * dd;
            double dl = delta[q];
            if (d2 < dl * dl) {
                double term = weights[q] * (dl - std::sqrt(d2)) - comp;
                double t = sum + term;
                comp = (t - sum) - term;
                sum = t;
            }
        }
        // Advance all but the last axis.
        int axis = last - 1;
        while (axis >= 0) {
            if (++idx[axis] <= hi[axis]) {
                center[axis] = grid.domain().lo[axis] + (idx[axis] + 0.5) * grid.cell_width(axis);
                break;
            }
            idx[axis] = lo[axis];
            center[axis] = grid.domain().lo[axis] + (idx[axis] + 0.5) * grid.cell_width(axis);
            --axis;
        }
        if (axis < 0) break;
    }
    return sum;
}

}  // namespace facloc
