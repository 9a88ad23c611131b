#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace facloc {

/// Malformed density-grid file or inconsistent grid data.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Axis-aligned box in R^d.
struct BoxDomain {
    std::vector<double> lo;
    std::vector<double> hi;

    BoxDomain() = default;
    BoxDomain(std::vector<double> lo_, std::vector<double> hi_);

    int dim() const { return static_cast<int>(lo.size()); }
    double extent(int axis) const { return hi[axis] - lo[axis]; }
    double volume() const;
    bool contains(std::span<const double> x) const;

    static BoxDomain unit_interval() { return BoxDomain({0.0}, {1.0}); }
    static BoxDomain unit_square() { return BoxDomain({0.0, 0.0}, {1.0, 1.0}); }
};

/// Absolutely continuous probability measure sampled on a uniform grid:
/// one mass per cell, midpoint rule, normalized so the masses sum to 1.
/// Immutable after construction.
class DensityGrid {
public:
    DensityGrid(BoxDomain domain, std::vector<int> shape, std::vector<double> raw_weights);

    static DensityGrid uniform(BoxDomain domain, std::vector<int> shape);
    /// Sample a density function at cell centers (weight = f(center) * cellVolume).
    static DensityGrid from_density(BoxDomain domain, std::vector<int> shape,
                                    const std::function<double(std::span<const double>)>& f);
    /// Parse the text format: "d n1 .. nd" / "lo1 hi1 .. lod hid" / weights,
    /// row-major with the last axis fastest. Lines starting with '#' are skipped.
    static DensityGrid load(const std::string& path);

    const BoxDomain& domain() const { return domain_; }
    const std::vector<int>& shape() const { return shape_; }
    int dim() const { return domain_.dim(); }
    long num_cells() const { return static_cast<long>(weights_.size()); }
    double cell_width(int axis) const { return domain_.extent(axis) / shape_[axis]; }
    /// Largest cell width over axes; the natural quadrature resolution.
    double max_cell_width() const;
    double cell_volume() const;
    const std::vector<double>& weights() const { return weights_; }
    double weight(long cell) const { return weights_[cell]; }
    /// Total mass of the raw weights before normalization.
    double raw_mass() const { return raw_mass_; }

    void cell_center(long cell, std::span<double> out) const;
    std::vector<double> cell_center(long cell) const;
    /// Flat index of the cell whose center is nearest to x (x clamped into the box).
    long cell_of(std::span<const double> x) const;

private:
    BoxDomain domain_;
    std::vector<int> shape_;
    std::vector<double> weights_;
    double raw_mass_ = 0.0;
};

}  // namespace facloc
