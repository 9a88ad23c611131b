#include "facloc/short_term.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace facloc::short1d {

namespace {

// Per-step sweep state: sorted configuration points and prefix sums over
// cells of w, w*c and w*delta. Gain of inserting x only involves the cells
// between the midpoints toward the two neighboring points, so each candidate
// evaluates in O(log) from the prefixes.
struct Sweep {
    const DensityGrid* grid;
    std::vector<double> pts;       // sorted configuration points
    std::vector<double> W, S, D;   // prefix sums, size m+1
    double current_cost = 0.0;
    bool empty = true;
    double lo = 0.0, width = 0.0;
    long m = 0;

    void build(const DensityGrid& g, const Configuration& config) {
        grid = &g;
        if (g.dim() != 1)
            throw std::invalid_argument("short1d: one-dimensional grids only");
        m = g.num_cells();
        lo = g.domain().lo[0];
        width = g.cell_width(0);
        pts.assign(config.flat_points().begin(), config.flat_points().end());
        std::sort(pts.begin(), pts.end());
        empty = config.empty();
        const auto& w = g.weights();
        W.assign(m + 1, 0.0);
        S.assign(m + 1, 0.0);
        D.assign(m + 1, 0.0);
        const auto& delta = config.distance_field();
        for (long q = 0; q < m; ++q) {
            double c = lo + (q + 0.5) * width;
            W[q + 1] = W[q] + w[q];
            S[q + 1] = S[q] + w[q] * c;
            D[q + 1] = D[q] + (empty ? 0.0 : w[q] * delta[q]);
        }
        current_cost = empty ? std::numeric_limits<double>::quiet_NaN()
                             : D[m];
    }

    long index_of_first_center_geq(double x) const {
        double t = (x - lo) / width - 0.5;
        long q = static_cast<long>(std::ceil(t));
        if (q > 0 && lo + (q - 0.5) * width >= x) --q;  // guard against ceil slop
        while (q < m && lo + (q + 0.5) * width < x) ++q;
        return std::clamp(q, 0L, m);
    }

    // Cost after inserting a point at x.
    double cost_at(double x) const {
        if (empty) {
            long ix = index_of_first_center_geq(x);
            return (x * W[ix] - S[ix]) + (S[m] - S[ix]) - x * (W[m] - W[ix]);
        }
        auto it = std::lower_bound(pts.begin(), pts.end(), x);
        double mlo = (it == pts.begin()) ? lo : 0.5 * (*(it - 1) + x);
        double mhi = (it == pts.end()) ? lo + m * width : 0.5 * (x + *it);
        long il = index_of_first_center_geq(mlo);
        long ir = index_of_first_center_geq(mhi);
        long ix = std::clamp(index_of_first_center_geq(x), il, ir);
        double gain = (D[ir] - D[il])
                    - (x * (W[ix] - W[il]) - (S[ix] - S[il]))
                    - ((S[ir] - S[ix]) - x * (W[ir] - W[ix]));
        return current_cost - gain;
    }

    // Endpoints of the insertion interval containing x.
    std::pair<double, double> interval_of(double x) const {
        if (pts.empty()) return {lo, lo + m * width};
        auto it = std::upper_bound(pts.begin(), pts.end(), x);
        double a = (it == pts.begin()) ? lo : *(it - 1);
        double b = (it == pts.end()) ? lo + m * width : *it;
        return {a, b};
    }

    double ternary_min(double a, double b, int iters = 120) const {
        for (int i = 0; i < iters && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
            double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (cost_at(m1) <= cost_at(m2)) b = m2; else a = m1;
        }
        return 0.5 * (a + b);
    }
};

}  // namespace

Insertion best_insertion(const DensityGrid& grid, const Configuration& config,
                         double tie_tolerance) {
    Sweep sw;
    sw.build(grid, config);
    const long m = sw.m;

    std::vector<double> cost(m);
    double cmin = std::numeric_limits<double>::infinity();
    for (long q = 0; q < m; ++q) {
        double c = sw.lo + (q + 0.5) * sw.width;
        cost[q] = sw.cost_at(c);
        cmin = std::min(cmin, cost[q]);
    }
    double ref = sw.empty ? cmin : sw.current_cost;
    double tol = tie_tolerance * std::abs(ref);

    Insertion out;
    bool have_best = false;
    // Contiguous tied runs, split at insertion-interval boundaries.
    long q = 0;
    while (q < m) {
        if (cost[q] > cmin + tol) {
            ++q;
            continue;
        }
        double first_center = sw.lo + (q + 0.5) * sw.width;
        auto iv = sw.interval_of(first_center);
        long r = q;
        while (r + 1 < m && cost[r + 1] <= cmin + tol) {
            double c_next = sw.lo + (r + 1.5) * sw.width;
            if (c_next > iv.second) break;
            ++r;
        }
        double last_center = sw.lo + (r + 0.5) * sw.width;
        for (long i = q; i <= r; ++i) out.tie_set.push_back(sw.lo + (i + 0.5) * sw.width);

        double blo = std::max(iv.first, first_center - sw.width);
        double bhi = std::min(iv.second, last_center + sw.width);
        double xl = sw.ternary_min(blo, std::min(bhi, first_center + sw.width));
        double xr = sw.ternary_min(std::max(blo, last_center - sw.width), bhi);
        double xm = sw.ternary_min(blo, bhi);

        // Track the run minimum for the global optimum (leftmost on ties).
        double best_x = xm, best_c = sw.cost_at(xm);
        for (double cand : {xl, xr}) {
            double cc = sw.cost_at(cand);
            if (cc < best_c) { best_c = cc; best_x = cand; }
        }
        if (!have_best || best_c < out.cost) {
            out.x = best_x;
            out.cost = best_c;
            have_best = true;
        }

        if (std::abs(xr - xl) <= 0.5 * sw.width) {
            double cl = sw.cost_at(xl), cr = sw.cost_at(xr);
            out.choices.push_back(cl <= cr ? xl : xr);
            out.choice_costs.push_back(std::min(cl, cr));
        } else {
            out.choices.push_back(xl);
            out.choice_costs.push_back(sw.cost_at(xl));
            out.choices.push_back(xr);
            out.choice_costs.push_back(sw.cost_at(xr));
        }
        q = r + 1;
    }
    if (out.choices.empty())
        throw std::runtime_error("best_insertion: no candidate found (empty domain)");
    return out;
}

Trajectory run_trajectory(const DensityGrid& grid, long n, TieRule rule,
                          double tie_tolerance) {
    if (n < 1) throw std::invalid_argument("run_trajectory: n >= 1 required");
    Trajectory traj;
    traj.branch_label = (rule == TieRule::Leftmost) ? "L" : "R";
    Configuration config(grid);
    for (long k = 0; k < n; ++k) {
        Insertion ins = best_insertion(grid, config, tie_tolerance);
        size_t pick = (rule == TieRule::Leftmost) ? 0 : ins.choices.size() - 1;
        double x = ins.choices[pick];
        traj.points.push_back(x);
        traj.costs.push_back(ins.choice_costs[pick]);
        config = insert_point(grid, config, std::span<const double>(&x, 1));
    }
    return traj;
}

BranchSet enumerate_branches(const DensityGrid& grid, long n, long max_branches,
                             double tie_tolerance) {
    if (n < 1) throw std::invalid_argument("enumerate_branches: n >= 1 required");
    if (max_branches < 1) throw std::invalid_argument("enumerate_branches: max_branches >= 1 required");

    struct Node {
        Configuration config;
        Trajectory traj;
    };
    BranchSet out;
    std::vector<Node> cur;
    cur.push_back(Node{Configuration(grid), Trajectory{}});
    for (long step = 0; step < n; ++step) {
        std::vector<Node> next;
        for (const Node& node : cur) {
            Insertion ins = best_insertion(grid, node.config, tie_tolerance);
            for (size_t i = 0; i < ins.choices.size(); ++i) {
                if (static_cast<long>(next.size()) >= max_branches) {
                    out.truncated = true;
                    break;
                }
                double x = ins.choices[i];
                Node child{insert_point(grid, node.config, std::span<const double>(&x, 1)),
                           node.traj};
                child.traj.points.push_back(x);
                child.traj.costs.push_back(ins.choice_costs[i]);
                if (!child.traj.branch_label.empty()) child.traj.branch_label += '.';
                child.traj.branch_label += std::to_string(i);
                next.push_back(std::move(child));
            }
            if (static_cast<long>(next.size()) >= max_branches && out.truncated) break;
        }
        cur = std::move(next);
    }
    out.branches.reserve(cur.size());
    for (Node& node : cur) out.branches.push_back(std::move(node.traj));
    return out;
}

}  // namespace facloc::short1d
