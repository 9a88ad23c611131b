#include "facloc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace facloc {

BoxDomain::BoxDomain(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.empty())
        throw std::invalid_argument("BoxDomain: lo/hi must be nonempty and of equal dimension");
    for (size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i]))
            throw std::invalid_argument("BoxDomain: lo[i] < hi[i] required");
}

double BoxDomain::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= extent(i);
    return v;
}

bool BoxDomain::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

DensityGrid::DensityGrid(BoxDomain domain, std::vector<int> shape, std::vector<double> raw_weights)
    : domain_(std::move(domain)), shape_(std::move(shape)), weights_(std::move(raw_weights)) {
    if (static_cast<int>(shape_.size()) != domain_.dim())
        throw std::invalid_argument("DensityGrid: shape rank must match domain dimension");
    long cells = 1;
    for (int n : shape_) {
        if (n < 1) throw std::invalid_argument("DensityGrid: shape entries must be >= 1");
        cells *= n;
    }
    if (static_cast<long>(weights_.size()) != cells)
        throw ParseError("DensityGrid: weight count does not match shape");
    double total = 0.0;
    for (double w : weights_) {
        if (w < 0.0) throw ParseError("DensityGrid: negative weight");
        if (!std::isfinite(w)) throw ParseError("DensityGrid: non-finite weight");
        total += w;
    }
    if (!(total > 0.0)) throw ParseError("DensityGrid: total mass must be positive");
    raw_mass_ = total;
    for (double& w : weights_) w /= total;
}

DensityGrid DensityGrid::uniform(BoxDomain domain, std::vector<int> shape) {
    long cells = 1;
    for (int n : shape) {
        if (n < 1) throw std::invalid_argument("DensityGrid: shape entries must be >= 1");
        cells *= n;
    }
    return DensityGrid(std::move(domain), std::move(shape), std::vector<double>(cells, 1.0));
}

DensityGrid DensityGrid::from_density(BoxDomain domain, std::vector<int> shape,
                                      const std::function<double(std::span<const double>)>& f) {
    DensityGrid proto = uniform(domain, shape);
    std::vector<double> w(proto.num_cells());
    std::vector<double> c(proto.dim());
    const double vol = proto.cell_volume();
    for (long q = 0; q < proto.num_cells(); ++q) {
        proto.cell_center(q, c);
        w[q] = f(c) * vol;
    }
    return DensityGrid(proto.domain_, proto.shape_, std::move(w));
}

DensityGrid DensityGrid::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open density file: " + path);
    // Strip comment lines, keep the token stream.
    std::stringstream tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        tokens << line << '\n';
    }
    int d = 0;
    if (!(tokens >> d) || d < 1) throw ParseError("density file: bad dimension in header");
    std::vector<int> shape(d);
    long cells = 1;
    for (int i = 0; i < d; ++i) {
        if (!(tokens >> shape[i]) || shape[i] < 1)
            throw ParseError("density file: bad shape in header");
        cells *= shape[i];
    }
    std::vector<double> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        if (!(tokens >> lo[i] >> hi[i]) || !(lo[i] < hi[i]))
            throw ParseError("density file: bad domain bounds");
    }
    std::vector<double> w(cells);
    for (long q = 0; q < cells; ++q) {
        if (!(tokens >> w[q])) throw ParseError("density file: expected " + std::to_string(cells) +
                                                " weights, got " + std::to_string(q));
        if (w[q] < 0.0) throw ParseError("density file: negative weight at cell " + std::to_string(q));
    }
    double extra;
    if (tokens >> extra) throw ParseError("density file: trailing data after weights");
    return DensityGrid(BoxDomain(std::move(lo), std::move(hi)), std::move(shape), std::move(w));
}

double DensityGrid::max_cell_width() const {
    double w = 0.0;
    for (int i = 0; i < dim(); ++i) w = std::max(w, cell_width(i));
    return w;
}

double DensityGrid::cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= cell_width(i);
    return v;
}

void DensityGrid::cell_center(long cell, std::span<double> out) const {
    // Row-major, last axis fastest.
    for (int i = dim() - 1; i >= 0; --i) {
        long idx = cell % shape_[i];
        cell /= shape_[i];
        out[i] = domain_.lo[i] + (idx + 0.5) * cell_width(i);
    }
}

std::vector<double> DensityGrid::cell_center(long cell) const {
    std::vector<double> c(dim());
    cell_center(cell, c);
    return c;
}

long DensityGrid::cell_of(std::span<const double> x) const {
    long flat = 0;
    for (int i = 0; i < dim(); ++i) {
        double t = (x[i] - domain_.lo[i]) / cell_width(i);
        long idx = std::clamp(static_cast<long>(std::floor(t)), 0L, static_cast<long>(shape_[i]) - 1);
        flat = flat * shape_[i] + idx;
    }
    return flat;
}

}  // namespace facloc
