#include "facloc/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace facloc::greedy {

namespace {

int resolve_threads(int threads, long work_items) {
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
    }
    long max_useful = std::max(1L, work_items / 1024);
    return static_cast<int>(std::min<long>(threads, max_useful));
}

struct Candidate {
    double value = 0.0;  // gain to maximize (or -cost for the first point)
    long index = -1;
};

// value comparison with a relative tie band; ties keep the smaller index.
void consider(Candidate& best, double value, long index) {
    double band = 1e-12 * std::max(std::abs(best.value), std::abs(value));
    if (best.index < 0 || value > best.value + band) {
        best.value = value;
        best.index = index;
    }
}

// Gain of inserting the center of cell `cand`, scanning only the cells
// within the current maximal distance. Scratch buffers avoid per-call
// allocation during the sweep.
struct Scratch {
    std::vector<long> lo, hi, idx;
    std::vector<double> x0, center;
};

double gain_at(const DensityGrid& grid, const std::vector<double>& delta,
               double radius, long cand, Scratch& sc) {
    const int d = grid.dim();
    sc.lo.resize(d); sc.hi.resize(d); sc.idx.resize(d);
    sc.x0.resize(d); sc.center.resize(d);
    grid.cell_center(cand, sc.x0);
    for (int i = 0; i < d; ++i) {
        double w = grid.cell_width(i);
        double a = (sc.x0[i] - radius - grid.domain().lo[i]) / w - 0.5;
        double b = (sc.x0[i] + radius - grid.domain().lo[i]) / w - 0.5;
        sc.lo[i] = std::max(0L, static_cast<long>(std::ceil(a)));
        sc.hi[i] = std::min(static_cast<long>(grid.shape()[i]) - 1,
                            static_cast<long>(std::floor(b)));
        if (sc.lo[i] > sc.hi[i]) return 0.0;
        sc.idx[i] = sc.lo[i];
        sc.center[i] = grid.domain().lo[i] + (sc.idx[i] + 0.5) * w;
    }
    const auto& weights = grid.weights();
    const int last = d - 1;
    const double wlast = grid.cell_width(last);
    double sum = 0.0;
    while (true) {
        long base = 0;
        for (int i = 0; i < d; ++i) base = base * grid.shape()[i] + sc.idx[i];
        double fixed = 0.0;
        for (int i = 0; i < last; ++i) {
            double dd = sc.center[i] - sc.x0[i];
            fixed += dd * dd;
        }
        double x = grid.domain().lo[last] + (sc.lo[last] + 0.5) * wlast;
        long row = base - sc.idx[last];
        for (long k = sc.lo[last]; k <= sc.hi[last]; ++k, x += wlast) {
            double dd = x - sc.x0[last];
            double d2 = fixed + dd * dd;
            double dl = delta[row + k];
            if (d2 < dl * dl) sum += weights[row + k] * (dl - std::sqrt(d2));
        }
        int axis = last - 1;
        while (axis >= 0) {
            if (++sc.idx[axis] <= sc.hi[axis]) {
                sc.center[axis] = grid.domain().lo[axis] + (sc.idx[axis] + 0.5) * grid.cell_width(axis);
                break;
            }
            sc.idx[axis] = sc.lo[axis];
            sc.center[axis] = grid.domain().lo[axis] + (sc.idx[axis] + 0.5) * grid.cell_width(axis);
            --axis;
        }
        if (axis < 0) break;
    }
    return sum;
}

// Cost of the singleton {center of cand}: full scan.
double singleton_cost(const DensityGrid& grid, long cand, Scratch& sc) {
    const int d = grid.dim();
    sc.x0.resize(d);
    sc.center.resize(d);
    grid.cell_center(cand, sc.x0);
    const auto& weights = grid.weights();
    double sum = 0.0;
    for (long q = 0; q < grid.num_cells(); ++q) {
        grid.cell_center(q, sc.center);
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
            double dd = sc.center[i] - sc.x0[i];
            s += dd * dd;
        }
        sum += weights[q] * std::sqrt(s);
    }
    return sum;
}

Candidate sweep_range(const DensityGrid& grid, const Configuration& config,
                      long begin, long end, bool first_point) {
    Scratch sc;
    Candidate best;
    const auto& delta = config.distance_field();
    double radius = config.max_distance();
    for (long q = begin; q < end; ++q) {
        double v = first_point ? -singleton_cost(grid, q, sc)
                               : gain_at(grid, delta, radius, q, sc);
        consider(best, v, q);
    }
    return best;
}

}  // namespace

double exact_gain(const DensityGrid& grid, const Configuration& config,
                  std::span<const double> x0) {
    return insertion_gain(grid, config, x0);
}

GreedyState add_best_point(const DensityGrid& grid, GreedyState state, int threads) {
    const long cells = grid.num_cells();
    const bool first = state.config.empty();
    int nt = resolve_threads(threads, cells);

    Candidate best;
    if (nt <= 1) {
        best = sweep_range(grid, state.config, 0, cells, first);
    } else {
        std::vector<std::future<Candidate>> futs;
        long chunk = (cells + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            long b = t * chunk, e = std::min(cells, b + chunk);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, [&, b, e] {
                return sweep_range(grid, state.config, b, e, first);
            }));
        }
        // Merge in chunk order so the result matches a serial sweep.
        for (auto& f : futs) {
            Candidate c = f.get();
            if (c.index >= 0) consider(best, c.value, c.index);
        }
    }
    if (best.index < 0) throw std::runtime_error("add_best_point: no candidate");

    std::vector<double> x0 = grid.cell_center(best.index);
    double prev_cost = first ? 0.0 : state.cost_history.back();
    state.config = insert_point(grid, state.config, x0);
    if (first) {
        state.cost_history.push_back(-best.value);
        state.gain_history.push_back(0.0);
    } else {
        state.cost_history.push_back(prev_cost - best.value);
        state.gain_history.push_back(best.value);
    }
    return state;
}

GreedyState run(const DensityGrid& grid, long n, int threads) {
    if (n < 1) throw std::invalid_argument("greedy::run: n >= 1 required");
    GreedyState state(grid);
    for (long k = 0; k < n; ++k) state = add_best_point(grid, std::move(state), threads);
    return state;
}

}  // namespace facloc::greedy
