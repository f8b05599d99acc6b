#pragma once

#include <cstddef>
#include <vector>

namespace bgmix {

/// Density (or sub-density) sampled on a strictly increasing, equispaced grid.
/// Values are nonnegative; `spacing` caches the common step.
struct DensityGrid {
    std::vector<double> points;
    std::vector<double> values;
    double spacing = 0.0;

    DensityGrid() = default;

    /// Validates: >= 2 points, equispaced to 1e-9 relative, values >= 0 and
    /// same length as points. Throws std::invalid_argument on violation.
    DensityGrid(std::vector<double> pts, std::vector<double> vals);

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// Equispaced points from lo to hi inclusive, m >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t m);

/// Grid of 2*half_count+1 points at center + j*step, j = -half_count..half_count.
/// Symmetric about `center` by construction: index i mirrors to n-1-i.
std::vector<double> symmetric_points(double center, double step, std::size_t half_count);

/// Trapezoid-rule integral of the grid values.
double integrate(const DensityGrid& grid);

/// Trapezoid integral of raw values on an equispaced grid with step `spacing`.
double trapezoid(const std::vector<double>& values, double spacing);

/// Plug-in weight of a known background density g0 inside f:
/// min over grid points with g0 > eps of f/g0, clamped to [0, 1].
/// Both grids must share their points. Throws if g0 is zero everywhere.
double theta0_plugin(const DensityGrid& f, const DensityGrid& g0, double eps_div = 1e-12);

} // namespace bgmix
