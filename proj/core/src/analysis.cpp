#include "facloc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "facloc/exact_sequence.hpp"

namespace facloc::analysis {

std::pair<double, double> fit_exponent(std::span<const double> n,
                                       std::span<const double> value) {
    if (n.size() != value.size())
        throw std::invalid_argument("fit_exponent: mismatched series lengths");
    if (n.size() < 5)
        throw std::invalid_argument("fit_exponent: need at least 5 points");
    const size_t len = n.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < len; ++i) {
        if (!(value[i] > 0.0) || !(n[i] > 0.0))
            throw std::invalid_argument("fit_exponent: values and n must be positive");
        double x = std::log(n[i]), y = std::log(value[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = len * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_exponent: degenerate abscissae");
    double slope = (len * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / len;
    double ss = 0.0;
    for (size_t i = 0; i < len; ++i) {
        double r = std::log(value[i]) - (intercept + slope * std::log(n[i]));
        ss += r * r;
    }
    return {-slope, std::sqrt(ss / len)};
}

SeriesReport make_report(std::vector<double> n, std::vector<double> value) {
    SeriesReport rep;
    auto [alpha, residual] = fit_exponent(n, value);
    rep.alpha = alpha;
    rep.residual = residual;
    double n_hi = n.back();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 0.5 * n_hi) continue;
        double v = std::pow(n[i], alpha) * value[i];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rep.window_min = lo;
    rep.window_max = hi;
    rep.window_amplitude = hi - lo;
    rep.n = std::move(n);
    rep.value = std::move(value);
    return rep;
}

SeriesReport ratio_series(long n_max) {
    if (n_max < 2) throw std::invalid_argument("ratio_series: n_max >= 2 required");
    exact1d::ExactSequence seq = exact1d::generate_sequence(n_max);
    std::vector<double> n(n_max), r(n_max);
    n[0] = 1.0;
    r[0] = 1.0;
    // Exact cost at each phase boundary; double decrements inside a phase.
    for (const auto& p : seq.phases()) {
        double s = to_double(p.s_begin);
        double g = to_double(p.code.split_gain());
        long hi = std::min(p.k_begin + p.count, n_max);
        for (long k = p.k_begin + 1; k <= hi; ++k) {
            s -= g;
            n[k - 1] = static_cast<double>(k);
            r[k - 1] = 4.0 * k * s;
        }
    }
    SeriesReport rep;
    rep.alpha = 0.0;
    rep.residual = 0.0;
    if (n_max >= 5) {
        auto [alpha, residual] = fit_exponent(n, r);
        rep.alpha = alpha;
        rep.residual = residual;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (long k = n_max / 2; k <= n_max; ++k) {
        lo = std::min(lo, r[k - 1]);
        hi = std::max(hi, r[k - 1]);
    }
    rep.window_min = lo;
    rep.window_max = hi;
    rep.window_amplitude = hi - lo;
    rep.n = std::move(n);
    rep.value = std::move(r);
    return rep;
}

RecursiveBoundResult check_recursive_bound(std::span<const double> a, double C, int d) {
    if (!(C > 0.0)) throw std::invalid_argument("check_recursive_bound: C > 0 required");
    if (d < 1) throw std::invalid_argument("check_recursive_bound: d >= 1 required");
    RecursiveBoundResult res;
    if (a.empty()) {
        res.holds = true;
        return res;
    }
    res.bound = std::max(a[0], std::pow(1.0 / (d * C), 1.0 / d));
    res.holds = true;
    for (size_t k = 0; k + 1 < a.size(); ++k) {
        double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(a[k]);
        if (a[k + 1] > a[k] - C * std::pow(a[k], d + 1) + slack) {
            res.holds = false;
            res.first_violation = static_cast<long>(k);
            return res;
        }
    }
    for (size_t k = 0; k < a.size(); ++k) {
        double lim = res.bound * std::pow(static_cast<double>(k + 1), -1.0 / d);
        double slack = 8.0 * std::numeric_limits<double>::epsilon() * lim;
        if (a[k] > lim + slack) {
            res.holds = false;
            res.first_violation = static_cast<long>(k);
            return res;
        }
    }
    return res;
}

double rescaled_cost(const DensityGrid& grid, const Configuration& config) {
    if (config.empty())
        throw std::invalid_argument("rescaled_cost: empty configuration");
    double n = static_cast<double>(config.size());
    return std::pow(n, 1.0 / grid.dim()) * average_distance(grid, config);
}

bool Region::contains(double x) const {
    for (const auto& [lo, hi] : parts)
        if (x >= lo && x <= hi) return true;
    return false;
}

std::vector<RegionCount> region_histogram(std::span<const double> points,
                                          const std::vector<Region>& regions) {
    // Reject positive-length overlaps (shared endpoints are fine).
    for (size_t i = 0; i < regions.size(); ++i)
        for (size_t j = i + 1; j < regions.size(); ++j)
            for (const auto& [a1, b1] : regions[i].parts)
                for (const auto& [a2, b2] : regions[j].parts)
                    if (std::min(b1, b2) - std::max(a1, a2) > 0.0)
                        throw std::invalid_argument("region_histogram: overlapping regions");

    std::vector<RegionCount> out(regions.size());
    for (size_t i = 0; i < regions.size(); ++i) out[i].label = regions[i].label;
    for (double x : points) {
        for (size_t i = 0; i < regions.size(); ++i) {
            if (regions[i].contains(x)) {
                ++out[i].count;
                break;
            }
        }
    }
    double total = static_cast<double>(points.size());
    for (auto& rc : out) rc.fraction = total > 0 ? rc.count / total : 0.0;
    return out;
}

std::vector<Region> boundary_regions(int j_max) {
    std::vector<Region> out;
    for (int j = 0; j <= j_max; ++j) {
        exact1d::BoundaryRegion br = exact1d::boundary_region(j);
        Region r;
        r.label = "omega_" + std::to_string(j);
        r.parts = {{to_double(br.left.first), to_double(br.left.second)},
                   {to_double(br.right.first), to_double(br.right.second)}};
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Region> uniform_bins(double lo, double hi, int k) {
    if (k < 1 || !(lo < hi)) throw std::invalid_argument("uniform_bins: bad arguments");
    std::vector<Region> out;
    double w = (hi - lo) / k;
    for (int i = 0; i < k; ++i) {
        Region r;
        r.label = "bin_" + std::to_string(i);
        r.parts = {{lo + i * w, i + 1 == k ? hi : lo + (i + 1) * w}};
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace facloc::analysis
