#include "facloc/long_term.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace facloc::longterm {

namespace {

// Portable uniform in [0,1): bit-stable across platforms for a fixed seed.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double eval_points(const DensityGrid& grid, const std::vector<std::vector<double>>& pts) {
    Configuration config(grid);
    for (const auto& p : pts) config = insert_point(grid, config, p);
    return average_distance(grid, config);
}

}  // namespace

LongTermSolution solve_uniform_1d(long n) {
    if (n < 1) throw std::invalid_argument("solve_uniform_1d: n >= 1 required");
    LongTermSolution sol;
    sol.method = Method::ClosedForm1D;
    sol.points.reserve(n);
    for (long i = 1; i <= n; ++i)
        sol.points.push_back({static_cast<double>(2 * i - 1) / static_cast<double>(2 * n)});
    sol.cost = 0.25 / static_cast<double>(n);
    return sol;
}

namespace {

// Serving cost of cells [i..j] by one facility at the best cell center:
// the weighted median. Prefix sums make each query O(log).
struct OneGroupCost {
    std::vector<double> W, S, centers;  // prefixes size m+1; centers size m

    explicit OneGroupCost(const DensityGrid& grid) {
        long m = grid.num_cells();
        W.assign(m + 1, 0.0);
        S.assign(m + 1, 0.0);
        centers.resize(m);
        double lo = grid.domain().lo[0], w = grid.cell_width(0);
        for (long q = 0; q < m; ++q) {
            centers[q] = lo + (q + 0.5) * w;
            W[q + 1] = W[q] + grid.weight(q);
            S[q + 1] = S[q] + grid.weight(q) * centers[q];
        }
    }

    long median_index(long i, long j) const {
        double half = 0.5 * (W[j + 1] - W[i]);
        long lo = i, hi = j;
        while (lo < hi) {
            long mid = (lo + hi) / 2;
            if (W[mid + 1] - W[i] >= half) hi = mid; else lo = mid + 1;
        }
        return lo;
    }

    double cost(long i, long j, long med) const {
        double c = centers[med];
        double left = c * (W[med + 1] - W[i]) - (S[med + 1] - S[i]);
        double right = (S[j + 1] - S[med + 1]) - c * (W[j + 1] - W[med + 1]);
        return left + right;
    }
};

}  // namespace

std::vector<LongTermSolution> solve_dp_1d_all(const DensityGrid& grid, long n_max) {
    if (grid.dim() != 1) throw std::invalid_argument("solve_dp_1d: one-dimensional grids only");
    long m = grid.num_cells();
    if (n_max < 1) throw std::invalid_argument("solve_dp_1d: n >= 1 required");
    if (n_max > m) throw std::invalid_argument("solve_dp_1d: n exceeds the number of cells");

    OneGroupCost oc(grid);
    const double INF = std::numeric_limits<double>::infinity();
    // f[j] = optimal cost of serving cells [0..j] with exactly k nonempty
    // groups. Adding a facility never increases the cost, so the exact-k
    // optimum equals the at-most-k one.
    std::vector<double> prev(m, INF), cur(m, INF);
    // split[k-1][j] = first cell of the last group in the (k, j) optimum.
    std::vector<std::vector<int>> split(n_max, std::vector<int>(m, 0));

    for (long j = 0; j < m; ++j) prev[j] = oc.cost(0, j, oc.median_index(0, j));
    for (long k = 2; k <= n_max; ++k) {
        for (long j = 0; j < m; ++j) {
            double best = INF;
            int arg = static_cast<int>(k - 1);
            for (long i = k - 1; i <= j; ++i) {
                double c = prev[i - 1];
                if (c >= best) break;  // prev is nondecreasing, group cost >= 0
                double v = c + oc.cost(i, j, oc.median_index(i, j));
                if (v < best) {
                    best = v;
                    arg = static_cast<int>(i);
                }
            }
            cur[j] = best;
            split[k - 1][j] = arg;
        }
        std::swap(prev, cur);
    }

    std::vector<LongTermSolution> out;
    out.reserve(n_max);
    for (long k = 1; k <= n_max; ++k) {
        LongTermSolution sol;
        sol.method = Method::DP1D;
        long j = m - 1;
        std::vector<double> pts;
        for (long level = k; level >= 1; --level) {
            long i = (level == 1) ? 0 : split[level - 1][j];
            pts.push_back(oc.centers[oc.median_index(i, j)]);
            j = i - 1;
        }
        std::sort(pts.begin(), pts.end());
        for (double p : pts) sol.points.push_back({p});
        sol.cost = eval_points(grid, sol.points);
        out.push_back(std::move(sol));
    }
    return out;
}

LongTermSolution solve_dp_1d(const DensityGrid& grid, long n) {
    return solve_dp_1d_all(grid, n).back();
}

std::vector<double> geometric_median(std::span<const double> flat_points, int dim,
                                     std::span<const double> weights,
                                     std::span<const double> start) {
    const long n = static_cast<long>(weights.size());
    std::vector<double> y(start.begin(), start.end());
    if (n == 0) return y;
    std::vector<double> next(dim);
    for (int iter = 0; iter < 200; ++iter) {
        double denom = 0.0;
        std::fill(next.begin(), next.end(), 0.0);
        long at_node = -1;
        for (long i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (int c = 0; c < dim; ++c) {
                double dd = flat_points[i * dim + c] - y[c];
                d2 += dd * dd;
            }
            double d = std::sqrt(d2);
            if (d < 1e-12) {
                at_node = i;
                continue;
            }
            double u = weights[i] / d;
            denom += u;
            for (int c = 0; c < dim; ++c) next[c] += u * flat_points[i * dim + c];
        }
        if (at_node >= 0) {
            // Subgradient test at a data node: R = sum_{i != node} w_i (p_i - y)/d_i.
            std::vector<double> r(dim, 0.0);
            for (long i = 0; i < n; ++i) {
                if (i == at_node) continue;
                double d2 = 0.0;
                for (int c = 0; c < dim; ++c) {
                    double dd = flat_points[i * dim + c] - y[c];
                    d2 += dd * dd;
                }
                double d = std::sqrt(d2);
                if (d < 1e-12) continue;
                for (int c = 0; c < dim; ++c)
                    r[c] += weights[i] * (flat_points[i * dim + c] - y[c]) / d;
            }
            double rn = 0.0;
            for (int c = 0; c < dim; ++c) rn += r[c] * r[c];
            rn = std::sqrt(rn);
            if (rn <= weights[at_node] || denom == 0.0) return y;  // node is the median
            double step = (rn - weights[at_node]) / denom;
            for (int c = 0; c < dim; ++c) y[c] += step * r[c] / rn;
            continue;
        }
        if (denom == 0.0) return y;
        double move = 0.0;
        for (int c = 0; c < dim; ++c) {
            next[c] /= denom;
            move += (next[c] - y[c]) * (next[c] - y[c]);
        }
        y = next;
        if (std::sqrt(move) < 1e-13) break;
    }
    return y;
}

namespace {

struct LloydRun {
    std::vector<double> flat;  // n * d
    double cost = std::numeric_limits<double>::infinity();
};

LloydRun lloyd_once(const DensityGrid& grid, long n, std::uint64_t seed) {
    const int d = grid.dim();
    const long m = grid.num_cells();
    std::mt19937_64 rng(seed);

    // Cell centers, flattened once.
    std::vector<double> centers(m * d);
    {
        std::vector<double> c(d);
        for (long q = 0; q < m; ++q) {
            grid.cell_center(q, c);
            std::copy(c.begin(), c.end(), centers.begin() + q * d);
        }
    }
    // Cumulative weights for sampling initial points from the measure.
    std::vector<double> cum(m);
    std::partial_sum(grid.weights().begin(), grid.weights().end(), cum.begin());

    LloydRun run;
    run.flat.resize(n * d);
    for (long i = 0; i < n; ++i) {
        double u = uniform01(rng) * cum.back();
        long q = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
        q = std::min(q, m - 1);
        std::copy(centers.begin() + q * d, centers.begin() + (q + 1) * d,
                  run.flat.begin() + i * d);
    }

    std::vector<long> assign(m);
    std::vector<double> gather_pts, gather_w;
    double prev_cost = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 500; ++round) {
        // Assignment and cost.
        double cost = 0.0;
        for (long q = 0; q < m; ++q) {
            double bestd = std::numeric_limits<double>::infinity();
            long besti = 0;
            for (long i = 0; i < n; ++i) {
                double d2 = 0.0;
                for (int c = 0; c < d; ++c) {
                    double dd = centers[q * d + c] - run.flat[i * d + c];
                    d2 += dd * dd;
                }
                if (d2 < bestd) {
                    bestd = d2;
                    besti = i;
                }
            }
            assign[q] = besti;
            cost += grid.weight(q) * std::sqrt(bestd);
        }
        run.cost = cost;
        if (prev_cost - cost < 1e-10) break;
        prev_cost = cost;

        // Median update per group.
        for (long i = 0; i < n; ++i) {
            gather_pts.clear();
            gather_w.clear();
            for (long q = 0; q < m; ++q) {
                if (assign[q] != i || grid.weight(q) <= 0.0) continue;
                for (int c = 0; c < d; ++c) gather_pts.push_back(centers[q * d + c]);
                gather_w.push_back(grid.weight(q));
            }
            if (gather_w.empty()) {
                // Re-seed an empty group at the heaviest-farthest cell.
                long argq = 0;
                double bestv = -1.0;
                for (long q = 0; q < m; ++q) {
                    double dmin = std::numeric_limits<double>::infinity();
                    for (long p = 0; p < n; ++p) {
                        double d2 = 0.0;
                        for (int c = 0; c < d; ++c) {
                            double dd = centers[q * d + c] - run.flat[p * d + c];
                            d2 += dd * dd;
                        }
                        dmin = std::min(dmin, d2);
                    }
                    double v = grid.weight(q) * dmin;
                    if (v > bestv) {
                        bestv = v;
                        argq = q;
                    }
                }
                std::copy(centers.begin() + argq * d, centers.begin() + (argq + 1) * d,
                          run.flat.begin() + i * d);
                continue;
            }
            std::span<const double> start(run.flat.data() + i * d, d);
            std::vector<double> med = geometric_median(gather_pts, d, gather_w, start);
            std::copy(med.begin(), med.end(), run.flat.begin() + i * d);
        }
    }
    return run;
}

}  // namespace

LongTermSolution solve_lloyd(const DensityGrid& grid, long n, int restarts,
                             std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("solve_lloyd: n >= 1 required");
    if (restarts < 1) throw std::invalid_argument("solve_lloyd: restarts >= 1 required");

    std::vector<std::future<LloydRun>> futs;
    futs.reserve(restarts);
    for (int r = 0; r < restarts; ++r) {
        std::uint64_t sub_seed = seed * 0x9e3779b97f4a7c15ULL + 0x1000003ULL * (r + 1);
        futs.push_back(std::async(std::launch::async,
                                  [&grid, n, sub_seed] { return lloyd_once(grid, n, sub_seed); }));
    }
    LloydRun best;
    for (auto& f : futs) {
        LloydRun run = f.get();
        if (run.cost < best.cost) best = std::move(run);  // merge order fixed: deterministic
    }

    const int d = grid.dim();
    LongTermSolution sol;
    sol.method = Method::Lloyd;
    sol.restarts = restarts;
    for (long i = 0; i < n; ++i)
        sol.points.emplace_back(best.flat.begin() + i * d, best.flat.begin() + (i + 1) * d);
    sol.cost = eval_points(grid, sol.points);
    return sol;
}

LongTermSolution solve_brute_force(const DensityGrid& grid, long n) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("solve_brute_force: n in {1,2,3} only");
    const long m = grid.num_cells();
    std::vector<long> idx(n), best_idx;
    double best = std::numeric_limits<double>::infinity();
    // Nondecreasing index tuples over candidate cells.
    std::function<void(long, long)> rec = [&](long pos, long from) {
        if (pos == n) {
            std::vector<std::vector<double>> pts;
            for (long i : idx) pts.push_back(grid.cell_center(i));
            double c = eval_points(grid, pts);
            if (c < best) {
                best = c;
                best_idx = idx;
            }
            return;
        }
        for (long q = from; q < m; ++q) {
            idx[pos] = q;
            rec(pos + 1, q);
        }
    };
    rec(0, 0);
    LongTermSolution sol;
    sol.method = Method::BruteForce;
    for (long i : best_idx) sol.points.push_back(grid.cell_center(i));
    sol.cost = best;
    return sol;
}

double theta(int d) {
    if (d == 1) return 0.25;
    if (d == 2) return (3.0 * std::log(3.0) + 4.0) / (6.0 * std::sqrt(2.0) * std::pow(3.0, 0.75));
    throw std::invalid_argument("theta: only d in {1,2} is known");
}

double limit_cost(const DensityGrid& grid, long n) {
    if (n < 1) throw std::invalid_argument("limit_cost: n >= 1 required");
    const int d = grid.dim();
    double th = theta(d);  // throws for unsupported dimension
    // integral of f^(d/(d+1)) from cell masses: sum w^(d/(d+1)) * V^(1/(d+1)).
    double expo = static_cast<double>(d) / (d + 1);
    double v = grid.cell_volume();
    double integral = 0.0;
    for (double w : grid.weights()) integral += std::pow(w, expo) * std::pow(v, 1.0 - expo);
    double norm = std::pow(integral, (d + 1.0) / d);
    return std::pow(static_cast<double>(n), -1.0 / d) * th * norm;
}

DensityGrid limit_density(const DensityGrid& grid) {
    const int d = grid.dim();
    double expo = static_cast<double>(d) / (d + 1);
    std::vector<double> w(grid.num_cells());
    for (long q = 0; q < grid.num_cells(); ++q) w[q] = std::pow(grid.weight(q), expo);
    return DensityGrid(grid.domain(), grid.shape(), std::move(w));
}

}  // namespace facloc::longterm
